#pragma once

// Opaque stratum classes: named varieties whose class is not expressed through L,
// carried with enough data to realize them.

#include "int_poly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace mhz {

struct StratumSymbol {
    std::string name;
    int dim = 0;
    IntPoly poincare;                        // in t
    std::map<std::int64_t, Int> counts;      // q -> #points over F_q
    bool effective = true;

    void validate() const
    {
        if (name.empty()) {
            throw ValidationError("stratum symbol without a name");
        }
        if (poincare.is_zero() || poincare.degree() != 2 * dim || poincare.lead() <= 0) {
            throw ValidationError("stratum symbol '" + name +
                                  "': Poincare polynomial must have degree 2*dim and positive leading coefficient");
        }
        for (const auto& [q, c] : counts) {
            if (q < 2 || c < 0) {
                throw ValidationError("stratum symbol '" + name + "': invalid count entry");
            }
        }
    }
};

/// Name -> symbol data. Writes take an exclusive lock; after freeze() every write is rejected,
/// so a frozen registry can be shared freely between threads.
class SymbolRegistry {
public:
    SymbolRegistry() = default;
    SymbolRegistry(const SymbolRegistry& other)
    {
        std::shared_lock lock(other.mutex_);
        symbols_ = other.symbols_;
    }
    SymbolRegistry& operator=(const SymbolRegistry& other)
    {
        if (this != &other) {
            std::map<std::string, StratumSymbol> copy;
            {
                std::shared_lock lock(other.mutex_);
                copy = other.symbols_;
            }
            std::unique_lock lock(mutex_);
            symbols_ = std::move(copy);
            frozen_ = false;
        }
        return *this;
    }

    void add(StratumSymbol s)
    {
        s.validate();
        std::unique_lock lock(mutex_);
        if (frozen_) {
            throw std::logic_error("symbol registry is frozen");
        }
        symbols_[s.name] = std::move(s);
    }

    void freeze()
    {
        std::unique_lock lock(mutex_);
        frozen_ = true;
    }

    bool frozen() const
    {
        std::shared_lock lock(mutex_);
        return frozen_;
    }

    std::optional<StratumSymbol> find(const std::string& name) const
    {
        std::shared_lock lock(mutex_);
        if (auto it = symbols_.find(name); it != symbols_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    const StratumSymbol& at(const std::string& name) const
    {
        std::shared_lock lock(mutex_);
        auto it = symbols_.find(name);
        if (it == symbols_.end()) {
            throw ValidationError("unregistered stratum symbol '" + name + "'");
        }
        return it->second;
    }

    std::map<std::string, StratumSymbol> snapshot() const
    {
        std::shared_lock lock(mutex_);
        return symbols_;
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, StratumSymbol> symbols_;
    bool frozen_ = false;
};

} // namespace mhz
