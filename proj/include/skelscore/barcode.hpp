#pragma once

#include <cstddef>
#include <vector>

namespace skelscore {

/// Persistence interval [birth, death). Essential features never die in the
/// filtration; their death is capped at the filtration limit.
struct PersistenceBar {
    double birth = 0.0;
    double death = 0.0;
    bool essential = false;

    double persistence() const { return death - birth; }
};

struct PersistenceBarcode {
    std::vector<PersistenceBar> bars;

    std::size_t size() const { return bars.size(); }
    bool empty() const { return bars.empty(); }

    std::size_t essential_count() const {
        std::size_t n = 0;
        for (const PersistenceBar& bar : bars) n += bar.essential ? 1 : 0;
        return n;
    }
};

/// Keeps exactly the bars with persistence >= eps_star (bars with
/// persistence strictly less than the threshold are removed); input order
/// is preserved.
PersistenceBarcode filter_barcode(const PersistenceBarcode& barcode, double eps_star);

}  // namespace skelscore
