#include "skelscore/barcode_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace skelscore {

double interval_distance(const PersistenceBar& a, const PersistenceBar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const PersistenceBar& bar) {
    return 0.5 * bar.persistence();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, int p) {
    double result = 1.0;
    for (int i = 0; i < p; ++i) result *= x;
    return result;
}

bool common_birth(const PersistenceBarcode& a, const PersistenceBarcode& b, double& birth) {
    const PersistenceBar* first = nullptr;
    if (!a.empty())
        first = &a.bars.front();
    else if (!b.empty())
        first = &b.bars.front();
    else
        return false;
    birth = first->birth;
    for (const PersistenceBar& bar : a.bars)
        if (bar.birth != birth) return false;
    for (const PersistenceBar& bar : b.bars)
        if (bar.birth != birth) return false;
    return true;
}

std::vector<double> sorted_deaths(const PersistenceBarcode& barcode) {
    std::vector<double> deaths;
    deaths.reserve(barcode.size());
    for (const PersistenceBar& bar : barcode.bars) deaths.push_back(bar.death);
    std::sort(deaths.begin(), deaths.end());
    return deaths;
}

// With a common birth every interval distance reduces to |death - death|
// and every diagonal cost to (death - birth) / 2, a 1D transport problem:
// some optimal matching is monotone over the sorted deaths, so a suffix DP
// over (i, j) with match / delete-left / delete-right transitions is exact.
double dp_matching_cost_sum(const std::vector<double>& a, const std::vector<double>& b,
                            double birth, int p) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<double> next(m + 1, 0.0), cur(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;)
        next[j] = ipow(0.5 * (b[j] - birth), p) + next[j + 1];
    for (std::size_t i = n; i-- > 0;) {
        const double del_a = ipow(0.5 * (a[i] - birth), p);
        cur[m] = del_a + next[m];
        for (std::size_t j = m; j-- > 0;) {
            const double match = ipow(std::abs(a[i] - b[j]), p) + next[j + 1];
            const double skip_a = del_a + next[j];
            const double skip_b = ipow(0.5 * (b[j] - birth), p) + cur[j + 1];
            cur[j] = std::min({match, skip_a, skip_b});
        }
        std::swap(cur, next);
    }
    return next[0];
}

double dp_matching_cost_max(const std::vector<double>& a, const std::vector<double>& b,
                            double birth) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<double> next(m + 1, 0.0), cur(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;)
        next[j] = std::max(0.5 * (b[j] - birth), next[j + 1]);
    for (std::size_t i = n; i-- > 0;) {
        const double del_a = 0.5 * (a[i] - birth);
        cur[m] = std::max(del_a, next[m]);
        for (std::size_t j = m; j-- > 0;) {
            const double match = std::max(std::abs(a[i] - b[j]), next[j + 1]);
            const double skip_a = std::max(del_a, next[j]);
            const double skip_b = std::max(0.5 * (b[j] - birth), cur[j + 1]);
            cur[j] = std::min({match, skip_a, skip_b});
        }
        std::swap(cur, next);
    }
    return next[0];
}

// Augmented square cost matrix: rows are bars of `a` then |b| diagonal
// slots, columns are bars of `b` then |a| diagonal slots. Bar-to-diagonal
// costs the bar's own projection; diagonal-to-diagonal is free.
std::vector<std::vector<double>> augmented_costs(const PersistenceBarcode& a,
                                                 const PersistenceBarcode& b) {
    const std::size_t n = a.size(), m = b.size(), total = n + m;
    std::vector<std::vector<double>> cost(total, std::vector<double>(total, 0.0));
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) {
            if (i < n && j < m)
                cost[i][j] = interval_distance(a.bars[i], b.bars[j]);
            else if (i < n)
                cost[i][j] = diagonal_cost(a.bars[i]);
            else if (j < m)
                cost[i][j] = diagonal_cost(b.bars[j]);
        }
    return cost;
}

// Hungarian algorithm with potentials, O(N^3); exact minimum-cost perfect
// matching on a square matrix.
double hungarian_min_cost(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0.0;
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
    return total;
}

bool kuhn_augment(int row, const std::vector<std::vector<double>>& cost, double threshold,
                  std::vector<int>& matched_col_of_row, std::vector<int>& matched_row_of_col,
                  std::vector<char>& visited) {
    const int n = static_cast<int>(cost.size());
    for (int col = 0; col < n; ++col) {
        if (visited[col] || cost[row][col] > threshold) continue;
        visited[col] = 1;
        if (matched_row_of_col[col] < 0 ||
            kuhn_augment(matched_row_of_col[col], cost, threshold, matched_col_of_row,
                         matched_row_of_col, visited)) {
            matched_col_of_row[row] = col;
            matched_row_of_col[col] = row;
            return true;
        }
    }
    return false;
}

bool perfect_matching_under(const std::vector<std::vector<double>>& cost, double threshold) {
    const int n = static_cast<int>(cost.size());
    std::vector<int> matched_col_of_row(n, -1), matched_row_of_col(n, -1);
    for (int row = 0; row < n; ++row) {
        std::vector<char> visited(n, 0);
        if (!kuhn_augment(row, cost, threshold, matched_col_of_row, matched_row_of_col, visited))
            return false;
    }
    return true;
}

double bottleneck_general(const PersistenceBarcode& a, const PersistenceBarcode& b) {
    const auto cost = augmented_costs(a, b);
    std::vector<double> candidates{0.0};
    for (const auto& row : cost)
        for (double c : row) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (perfect_matching_under(cost, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

}  // namespace

double bottleneck_distance(const PersistenceBarcode& a, const PersistenceBarcode& b) {
    if (a.empty() && b.empty()) return 0.0;
    double birth = 0.0;
    if (common_birth(a, b, birth))
        return dp_matching_cost_max(sorted_deaths(a), sorted_deaths(b), birth);
    return bottleneck_general(a, b);
}

double wasserstein_distance(const PersistenceBarcode& a, const PersistenceBarcode& b, int p) {
    if (p < 1) throw std::invalid_argument("wasserstein_distance: require p >= 1");
    if (a.empty() && b.empty()) return 0.0;

    double total = 0.0;
    double birth = 0.0;
    if (common_birth(a, b, birth))
        total = dp_matching_cost_sum(sorted_deaths(a), sorted_deaths(b), birth, p);
    else {
        auto cost = augmented_costs(a, b);
        for (auto& row : cost)
            for (double& c : row) c = ipow(c, p);
        total = hungarian_min_cost(cost);
    }

    const double n_b = static_cast<double>(std::max(a.size(), b.size()));
    if (p == 1) return total / n_b;
    if (p == 2) return std::sqrt(total) / n_b;
    return std::pow(total, 1.0 / p) / n_b;
}

}  // namespace skelscore
