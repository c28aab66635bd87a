#include "oge/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace oge {

namespace {

std::uint64_t mix_cells(const std::vector<long long>& cells) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (long long c : cells) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return h;
}

// Spatial bucket index over a point set. Valid pruning device whenever the
// metric dominates every per-coordinate distance (max metrics): d_n <= eps
// then implies per-coordinate proximity within the supplied window.
class BucketGrid {
public:
    BucketGrid(const DynamicalSystemSpec& spec, std::vector<double> window)
        : spec_(&spec), window_(std::move(window)) {
        for (std::size_t c = 0; c < window_.size(); ++c) {
            window_[c] = std::max(window_[c], 1e-12);
            const double period = spec_->coord_periods.empty() ? 0.0 : spec_->coord_periods[c];
            cells_.push_back(period > 0 ? std::max<long long>(1, static_cast<long long>(std::floor(period / window_[c]))) : 0);
        }
    }

    std::vector<long long> cell_of(const Point& p) const {
        std::vector<long long> cell(window_.size());
        for (std::size_t c = 0; c < window_.size(); ++c) {
            if (cells_[c] > 0) {
                // Periodic coordinate: equal cell widths period/Nc >= window.
                const double period = spec_->coord_periods[c];
                double x = p[c] - period * std::floor(p[c] / period);
                long long idx = static_cast<long long>(std::floor(x / period * static_cast<double>(cells_[c])));
                cell[c] = std::clamp<long long>(idx, 0, cells_[c] - 1);
            } else {
                cell[c] = static_cast<long long>(std::floor(p[c] / window_[c]));
            }
        }
        return cell;
    }

    void insert(const Point& p, std::size_t idx) {
        map_[mix_cells(cell_of(p))].push_back(idx);
    }

    // Visit each index in the 3^dim neighborhood of p's cell exactly once.
    template <typename F>
    void visit_neighbors(const Point& p, F&& fn) const {
        const auto base = cell_of(p);
        std::vector<long long> cur(base.size());
        std::vector<std::uint64_t> keys;
        gather_keys(base, cur, 0, keys);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (std::uint64_t k : keys) {
            auto it = map_.find(k);
            if (it != map_.end())
                for (std::size_t idx : it->second) fn(idx);
        }
    }

private:
    void gather_keys(const std::vector<long long>& base, std::vector<long long>& cur, std::size_t c,
                     std::vector<std::uint64_t>& keys) const {
        if (c == base.size()) {
            keys.push_back(mix_cells(cur));
            return;
        }
        for (long long d = -1; d <= 1; ++d) {
            long long v = base[c] + d;
            if (cells_[c] > 0) v = ((v % cells_[c]) + cells_[c]) % cells_[c];
            cur[c] = v;
            gather_keys(base, cur, c + 1, keys);
        }
    }

    const DynamicalSystemSpec* spec_;
    std::vector<double> window_;
    std::vector<long long> cells_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> map_;
};

}  // namespace

OrbitTable::OrbitTable(const DynamicalSystemSpec& spec, std::vector<Point> samples, std::size_t n_max,
                       bool force_orbits)
    : spec_(&spec), points_(std::move(samples)), n_max_(n_max), dim_(spec.dim) {
    const double need = static_cast<double>(points_.size()) * (n_max_ + 1) * dim_ * 8.0;
    const bool analytic = static_cast<bool>(spec.analytic_dn) && !force_orbits;
    if (!analytic && need > memory_budget_bytes())
        throw std::runtime_error("orbit table needs " + std::to_string(need) +
                                 " bytes, over the OGE_MEM_BUDGET limit");
    if (analytic) return;  // distances come in closed form; no memoization needed
    data_.resize(points_.size() * (n_max_ + 1) * dim_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        Point x = points_[i];
        std::memcpy(&data_[(i * (n_max_ + 1)) * dim_], x.data(), dim_ * sizeof(double));
        for (std::size_t t = 1; t <= n_max_; ++t) {
            x = spec.step(x);
            std::memcpy(&data_[(i * (n_max_ + 1) + t) * dim_], x.data(), dim_ * sizeof(double));
        }
    }
}

DistResult dynamical_distance(const OrbitTable& table, std::size_t i, std::size_t j, std::size_t n,
                              double early_exit_at) {
    const auto& spec = table.spec();
    if (n > table.n_max() && !spec.analytic_dn)
        throw std::invalid_argument("dynamical_distance: n exceeds the table horizon");
    if (spec.analytic_dn)
        return {spec.analytic_dn(table.points()[i], table.points()[j], n), false};
    const int dim = table.dim();
    Point a(dim), b(dim);
    double best = 0.0;
    for (std::size_t t = 0; t <= n; ++t) {
        const double* pa = table.orbit_at(i, t);
        const double* pb = table.orbit_at(j, t);
        a.assign(pa, pa + dim);
        b.assign(pb, pb + dim);
        best = std::max(best, spec.metric(a, b));
        if (best > early_exit_at) return {best, t < n};
    }
    return {best, false};
}

namespace {

std::vector<double> pruning_window(const DynamicalSystemSpec& spec, std::size_t n, double eps) {
    if (spec.dn_coord_window) return spec.dn_coord_window(n, eps);
    return std::vector<double>(static_cast<std::size_t>(spec.dim), eps);
}

}  // namespace

GreedyResult greedy_separated(const OrbitTable& table, std::size_t n, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("greedy_separated: eps must be positive");
    const auto& spec = table.spec();
    const std::size_t P = table.size();
    GreedyResult res;

    if (spec.separation_key) {
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < P; ++i)
            if (seen.insert(spec.separation_key(table.points()[i], n, eps)).second)
                res.kept.push_back(i);
        res.count = res.kept.size();
        return res;
    }

    if (spec.max_metric && !spec.coord_periods.empty()) {
        BucketGrid grid(spec, pruning_window(spec, n, eps));
        for (std::size_t i = 0; i < P; ++i) {
            bool rejected = false;
            grid.visit_neighbors(table.points()[i], [&](std::size_t j) {
                if (rejected) return;
                if (dynamical_distance(table, i, j, n, eps).value <= eps) rejected = true;
            });
            if (!rejected) {
                grid.insert(table.points()[i], i);
                res.kept.push_back(i);
            }
        }
        res.count = res.kept.size();
        return res;
    }

    for (std::size_t i = 0; i < P; ++i) {
        bool rejected = false;
        for (std::size_t j : res.kept) {
            if (dynamical_distance(table, i, j, n, eps).value <= eps) {
                rejected = true;
                break;
            }
        }
        if (!rejected) res.kept.push_back(i);
    }
    res.count = res.kept.size();
    return res;
}

GreedyResult greedy_spanning(const OrbitTable& table, std::size_t n, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("greedy_spanning: eps must be positive");
    const auto& spec = table.spec();
    const std::size_t P = table.size();
    GreedyResult res;

    if (spec.separation_key) {
        // Ultrametric: closed dynamical balls {d <= eps} are exactly the key
        // classes, so the greedy cover picks the first representative of
        // each class, largest first.
        std::unordered_map<std::string, std::vector<std::size_t>> classes;
        for (std::size_t i = 0; i < P; ++i)
            classes[spec.separation_key(table.points()[i], n, eps)].push_back(i);
        std::vector<std::pair<std::size_t, std::size_t>> order;  // (size, first index)
        order.reserve(classes.size());
        for (auto& kv : classes) order.push_back({kv.second.size(), kv.second.front()});
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (auto& [sz, first] : order) res.kept.push_back(first);
        res.count = res.kept.size();
        return res;
    }

    // Ball membership lists, bucket-pruned when the metric allows.
    std::vector<std::vector<std::size_t>> members(P);
    if (spec.max_metric && !spec.coord_periods.empty()) {
        BucketGrid grid(spec, pruning_window(spec, n, eps));
        for (std::size_t i = 0; i < P; ++i) grid.insert(table.points()[i], i);
        for (std::size_t i = 0; i < P; ++i) {
            grid.visit_neighbors(table.points()[i], [&](std::size_t j) {
                if (j < i) return;  // fill both directions once
                if (dynamical_distance(table, i, j, n, eps).value <= eps) {
                    members[i].push_back(j);
                    if (j != i) members[j].push_back(i);
                }
            });
        }
    } else {
        for (std::size_t i = 0; i < P; ++i)
            for (std::size_t j = i; j < P; ++j)
                if (dynamical_distance(table, i, j, n, eps).value <= eps) {
                    members[i].push_back(j);
                    if (j != i) members[j].push_back(i);
                }
    }

    // Lazy greedy max coverage; stale scores only overestimate, so a popped
    // entry whose recomputed score still tops the heap is the exact greedy
    // pick (ties resolved to the lowest index).
    std::vector<char> covered(P, 0);
    std::size_t n_covered = 0;
    using Entry = std::pair<std::size_t, std::size_t>;  // (score, index)
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < P; ++i) heap.push({members[i].size(), i});

    auto uncovered_gain = [&](std::size_t i) {
        std::size_t g = 0;
        for (std::size_t j : members[i]) g += covered[j] ? 0 : 1;
        return g;
    };

    while (n_covered < P && !heap.empty()) {
        auto [score, i] = heap.top();
        heap.pop();
        const std::size_t g = uncovered_gain(i);
        if (g == 0) continue;
        if (!heap.empty()) {
            const auto& top = heap.top();
            if (g < top.first || (g == top.first && top.second < i)) {
                heap.push({g, i});
                continue;
            }
        }
        res.kept.push_back(i);
        for (std::size_t j : members[i])
            if (!covered[j]) {
                covered[j] = 1;
                ++n_covered;
            }
    }
    if (n_covered < P)
        throw std::logic_error("greedy_spanning: cover incomplete (ball membership bug)");
    res.count = res.kept.size();
    return res;
}

bool verify_spanning(const OrbitTable& table, const std::vector<std::size_t>& kept, std::size_t n,
                     double eps) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        bool ok = false;
        for (std::size_t j : kept)
            if (dynamical_distance(table, i, j, n, eps).value <= eps) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

GrowthSequence growth_curve_on(const DynamicalSystemSpec& spec, std::vector<Point> samples,
                               double eps, std::size_t n_max) {
    OrbitTable table(spec, std::move(samples), n_max);
    std::vector<double> counts(n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        counts[n - 1] = static_cast<double>(greedy_separated(table, n, eps).count);
    return GrowthSequence::running_max(counts);
}

GrowthSequence growth_curve(const DynamicalSystemSpec& spec, double eps, std::size_t n_max,
                            double delta) {
    if (!(delta <= eps / 4.0))
        throw std::invalid_argument(
            "growth_curve: delta must be <= eps/4 (sampling must out-resolve the separation "
            "scale); got delta=" +
            std::to_string(delta) + ", eps=" + std::to_string(eps));
    std::vector<Point> samples;
    try {
        samples = spec.sampler(delta);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) +
                                 "; note delta > eps/4 would invalidate the curve");
    }
    return growth_curve_on(spec, std::move(samples), eps, n_max);
}

std::size_t itinerary_upper_bound(const OrbitTable& table, const std::vector<CoverBall>& partition,
                                  std::size_t n) {
    if (partition.empty()) throw std::invalid_argument("itinerary_upper_bound: empty partition");
    if (!table.has_orbits())
        throw std::invalid_argument("itinerary_upper_bound: table must be built with orbits");
    const auto& spec = table.spec();
    const int dim = table.dim();
    std::unordered_set<std::string> itineraries;
    Point x(dim);
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::string word;
        word.reserve(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double* px = table.orbit_at(i, t);
            x.assign(px, px + dim);
            int cell = -1;
            for (std::size_t c = 0; c < partition.size(); ++c)
                if (spec.metric(x, partition[c].center) <= partition[c].radius) {
                    cell = static_cast<int>(c);
                    break;
                }
            if (cell < 0)
                throw std::invalid_argument("itinerary_upper_bound: partition does not cover the samples");
            word.push_back(static_cast<char>(cell + 1));
        }
        itineraries.insert(std::move(word));
    }
    return itineraries.size();
}

GrowthSequence open_cover_growth(const DynamicalSystemSpec& spec, const std::vector<CoverBall>& cover,
                                 std::size_t n_max, double delta) {
    auto samples = spec.sampler(delta);
    const std::size_t P = samples.size();
    OrbitTable table(spec, std::move(samples), n_max, /*force_orbits=*/true);
    const int dim = table.dim();

    // Per-step per-sample cover membership, with containment margins.
    std::vector<std::vector<std::uint32_t>> member(n_max + 1, std::vector<std::uint32_t>(P, 0));
    std::vector<std::vector<std::vector<double>>> depth(
        n_max + 1, std::vector<std::vector<double>>(P, std::vector<double>(cover.size(), -1.0)));
    if (cover.size() > 32) throw std::invalid_argument("open_cover_growth: at most 32 cover elements");
    Point x(dim);
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t t = 0; t <= n_max; ++t) {
            const double* px = table.orbit_at(i, t);
            x.assign(px, px + dim);
            std::uint32_t bits = 0;
            for (std::size_t c = 0; c < cover.size(); ++c) {
                const double d = spec.metric(x, cover[c].center);
                if (d <= cover[c].radius) {
                    bits |= (1u << c);
                    depth[t][i][c] = cover[c].radius - d;
                }
            }
            if (!bits) throw std::invalid_argument("open_cover_growth: cover does not cover the samples");
            member[t][i] = bits;
        }

    std::vector<double> counts(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        // Candidate refinement cells: the deepest-containment itinerary of
        // each sample (at every step pick the element holding the orbit
        // point with the largest margin), so each candidate cell carries a
        // fixed-radius tube around its sample. A cell covers sample i iff
        // i's orbit meets every chosen element.
        std::vector<std::vector<std::uint8_t>> cells;
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < P; ++i) {
            std::vector<std::uint8_t> cell(n);
            std::string key(n, '\0');
            for (std::size_t t = 0; t < n; ++t) {
                const auto bits = member[t][i];
                std::uint8_t pick = 0;
                double best_margin = -1.0;
                for (std::size_t c = 0; c < depth[t][i].size(); ++c)
                    if ((bits >> c) & 1u) {
                        const double m = depth[t][i][c];
                        if (m > best_margin) {
                            best_margin = m;
                            pick = static_cast<std::uint8_t>(c);
                        }
                    }
                cell[t] = pick;
                key[t] = static_cast<char>(pick + 1);
            }
            if (seen.insert(key).second) cells.push_back(std::move(cell));
        }
        auto covers = [&](const std::vector<std::uint8_t>& cell, std::size_t i) {
            for (std::size_t t = 0; t < n; ++t)
                if (!(member[t][i] & (1u << cell[t]))) return false;
            return true;
        };
        std::vector<char> covered(P, 0);
        std::size_t n_cov = 0, picks = 0;
        while (n_cov < P) {
            std::size_t best_gain = 0, best_cell = 0;
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                std::size_t g = 0;
                for (std::size_t i = 0; i < P; ++i)
                    if (!covered[i] && covers(cells[ci], i)) ++g;
                if (g > best_gain) {
                    best_gain = g;
                    best_cell = ci;
                }
            }
            if (best_gain == 0)
                throw std::logic_error("open_cover_growth: refinement cells fail to cover");
            for (std::size_t i = 0; i < P; ++i)
                if (!covered[i] && covers(cells[best_cell], i)) {
                    covered[i] = 1;
                    ++n_cov;
                }
            ++picks;
        }
        counts[n - 1] = static_cast<double>(picks);
    }
    return GrowthSequence::running_max(counts);
}

}  // namespace oge
