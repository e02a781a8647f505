#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hct/thinning.hpp"

namespace hct {

// A candidate exchange: drop `remove` from the thinning, insert `add`.
// Valid iff the result stays hard-core and the weight strictly increases.
struct Swap {
    std::vector<int> remove;  // sorted, subset of the current thinning
    std::vector<int> add;     // sorted, subset of the complement

    long double gain(const Configuration& config, const WeightSpec& h) const {
        return thinning_weight_sum(add, config, h) - thinning_weight_sum(remove, config, h);
    }
};

namespace detail {

inline bool ball_in_cube(const Window& window, const Vec& center, const Grain& g, double m) {
    for (int c = 0; c < window.dim; ++c)
        if (window.coord_delta(center[c], g.center[c]) + g.radius > 0.5 * m) return false;
    return true;
}

inline bool swap_order_less(const std::vector<int>& add_a, const std::vector<int>& rem_a,
                            const std::vector<int>& add_b, const std::vector<int>& rem_b) {
    if (add_a != add_b)
        return std::lexicographical_compare(add_a.begin(), add_a.end(), add_b.begin(), add_b.end());
    return std::lexicographical_compare(rem_a.begin(), rem_a.end(), rem_b.begin(), rem_b.end());
}

// Exhaustive search over add-subsets within the cube. Removals are forced:
// a valid swap must remove exactly the kept neighbors of its add set (any
// extra removal only lowers the gain, since weights are positive).
inline std::optional<Swap> find_valid_swap_impl(const Configuration& config,
                                                const ContactGraph& graph,
                                                const std::vector<char>& kept,
                                                const WeightSpec& h, int center, double m,
                                                int s_max) {
    const int dim = config.window.dim;
    const Vec& cube_center = config.grain(center).center;

    struct Candidate {
        int id;
        long double w;
        std::vector<int> kept_nbrs;  // forced removals, each inside the cube
    };
    std::vector<Candidate> adds;
    for (int id = 0; id < config.size(); ++id) {
        if (kept[static_cast<std::size_t>(id)]) continue;
        if (!ball_in_cube(config.window, cube_center, config.grain(id), m)) continue;
        Candidate c{id, h.value_l(config.grain(id), dim), {}};
        bool usable = true;
        for (int nb : graph.neighbors(id)) {
            if (!kept[static_cast<std::size_t>(nb)]) continue;
            if (!ball_in_cube(config.window, cube_center, config.grain(nb), m)) {
                usable = false;  // forced removal outside the cube
                break;
            }
            c.kept_nbrs.push_back(nb);
        }
        if (usable && static_cast<int>(c.kept_nbrs.size()) <= s_max) adds.push_back(std::move(c));
    }

    std::optional<Swap> best;
    long double best_gain = 0.0L;

    std::vector<int> members;
    std::vector<int> removal_ids;                                              // cnt > 0 entries
    std::vector<int> cnt(static_cast<std::size_t>(config.size()), 0);
    long double sum_add = 0.0L, sum_rem = 0.0L;

    auto evaluate = [&]() {
        long double gain = sum_add - sum_rem;
        if (gain <= 0.0L) return;
        std::vector<int> add_ids = members;
        std::sort(add_ids.begin(), add_ids.end());
        std::vector<int> rem_ids = removal_ids;
        std::sort(rem_ids.begin(), rem_ids.end());
        if (!best || gain > best_gain ||
            (gain == best_gain && swap_order_less(add_ids, rem_ids, best->add, best->remove))) {
            best_gain = gain;
            best = Swap{std::move(rem_ids), std::move(add_ids)};
        }
    };

    auto overlaps_member = [&](int id) {
        for (int mem : members)
            if (interiors_overlap(config.grain(id), config.grain(mem), config.window)) return true;
        return false;
    };

    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(members.size()) == s_max) return;
        for (std::size_t i = start; i < adds.size(); ++i) {
            const Candidate& c = adds[i];
            if (overlaps_member(c.id)) continue;
            members.push_back(c.id);
            sum_add += c.w;
            std::size_t touched_from = removal_ids.size();
            for (int k : c.kept_nbrs)
                if (cnt[static_cast<std::size_t>(k)]++ == 0) {
                    removal_ids.push_back(k);
                    sum_rem += h.value_l(config.grain(k), dim);
                }
            if (static_cast<int>(removal_ids.size()) <= s_max) {
                evaluate();
                self(self, i + 1);
            }
            for (int k : c.kept_nbrs)
                if (--cnt[static_cast<std::size_t>(k)] == 0)
                    sum_rem -= h.value_l(config.grain(k), dim);
            removal_ids.resize(touched_from);
            sum_add -= c.w;
            members.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace detail

// Best (s_max, m)-bounded valid swap around a grain: all involved balls lie
// in the cube of side m centered at c(center); ties break by id order.
// Returns nullopt exactly when no valid swap exists there.
inline std::optional<Swap> find_valid_swap(const Configuration& config, const Thinning& t,
                                           const WeightSpec& h, int center, double m, int s_max) {
    if (!t.hard_core) throw std::invalid_argument("find_valid_swap requires a hard-core thinning");
    if (s_max < 1) throw std::invalid_argument("s_max must be at least 1");
    config.grain(center);
    ContactGraph graph = build_contact_graph(config);
    std::vector<char> kept(static_cast<std::size_t>(config.size()), 0);
    for (int id : t.kept) kept[static_cast<std::size_t>(id)] = 1;
    return detail::find_valid_swap_impl(config, graph, kept, h, center, m, s_max);
}

// Certifies (s_max, m)-bounded local maximality: no grain admits a valid
// swap. This is the finite-window certificate, necessary for the unbounded
// notion but checkable.
inline bool is_locally_maximal(const Configuration& config, const Thinning& t, const WeightSpec& h,
                               double m, int s_max) {
    if (!t.hard_core) throw std::invalid_argument("is_locally_maximal requires a hard-core thinning");
    ContactGraph graph = build_contact_graph(config);
    std::vector<char> kept(static_cast<std::size_t>(config.size()), 0);
    for (int id : t.kept) kept[static_cast<std::size_t>(id)] = 1;
    for (int center = 0; center < config.size(); ++center)
        if (detail::find_valid_swap_impl(config, graph, kept, h, center, m, s_max)) return false;
    return true;
}

namespace detail {

// Global best-swap engine behind local_improve. Enumerates connected add
// sets (two adds interact iff they share a kept neighbor; overlapping adds
// are never jointly valid), with removals forced as above. Every valid swap
// decomposes into such connected swaps with at least one part improving, so
// the fixed point is identical to the unrestricted search.
//
// Each add set is anchored at its maximum-weight member and anchors are
// scanned in descending weight, so the scan can stop as soon as
// s_max * w(anchor) cannot beat the incumbent gain.
class SwapEngine {
  public:
    SwapEngine(const Configuration& config, const ContactGraph& graph, const WeightSpec& h,
               double m, int s_max)
        : config_(config), graph_(graph), h_(h), m_(m), s_max_(s_max), grid_(config) {
        int n = config.size();
        w_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) w_[static_cast<std::size_t>(i)] = h.value_l(config.grain(i), config.window.dim);
        kept_.assign(static_cast<std::size_t>(n), 0);
        seen_.assign(static_cast<std::size_t>(n), 0);
        cnt_.assign(static_cast<std::size_t>(n), 0);
        order_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order_[static_cast<std::size_t>(i)] = i;
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (w_[static_cast<std::size_t>(a)] != w_[static_cast<std::size_t>(b)])
                return w_[static_cast<std::size_t>(a)] > w_[static_cast<std::size_t>(b)];
            return a < b;
        });

        double span = config.window.kind == WindowKind::Torus ? config.window.extent
                                                              : 4.0 * config.window.extent;
        double max_delta = config.window.kind == WindowKind::Torus ? 0.5 * span : span;
        always_fits_ = (max_delta + 2.0 * config.max_radius() <= 0.5 * m);
    }

    void set_kept(const std::vector<int>& kept_ids) {
        std::fill(kept_.begin(), kept_.end(), 0);
        for (int id : kept_ids) kept_[static_cast<std::size_t>(id)] = 1;
    }

    std::optional<Swap> best_swap() {
        best_.reset();
        best_gain_ = 0.0L;
        for (int anchor : order_) {
            if (kept_[static_cast<std::size_t>(anchor)]) continue;
            if (best_ && s_max_ * w_[static_cast<std::size_t>(anchor)] <= best_gain_) break;
            anchor_ = anchor;
            seen_[static_cast<std::size_t>(anchor)] = 1;
            if (push(anchor)) {
                std::vector<int> cand = new_interaction_nbrs(anchor);
                grow(cand);
                for (int y : cand) seen_[static_cast<std::size_t>(y)] = 0;
                pop_member();
            }
            seen_[static_cast<std::size_t>(anchor)] = 0;
        }
        return best_;
    }

    void apply(const Swap& swap) {
        for (int id : swap.remove) kept_[static_cast<std::size_t>(id)] = 0;
        for (int id : swap.add) kept_[static_cast<std::size_t>(id)] = 1;
    }

    std::vector<int> kept_ids() const {
        std::vector<int> out;
        for (int i = 0; i < config_.size(); ++i)
            if (kept_[static_cast<std::size_t>(i)]) out.push_back(i);
        return out;
    }

  private:
    // Adds x to the growing add set; false when independence or the removal
    // budget fails (supersets would fail too).
    bool push(int x) {
        for (int mem : members_)
            if (interiors_overlap(config_.grain(x), config_.grain(mem), config_.window)) return false;
        members_.push_back(x);
        sum_add_ += w_[static_cast<std::size_t>(x)];
        undo_.push_back(static_cast<int>(removals_.size()));
        for (int k : graph_.neighbors(x)) {
            if (!kept_[static_cast<std::size_t>(k)]) continue;
            if (cnt_[static_cast<std::size_t>(k)]++ == 0) {
                removals_.push_back(k);
                sum_rem_ += w_[static_cast<std::size_t>(k)];
            }
        }
        if (static_cast<int>(removals_.size()) > s_max_) {
            pop_member();
            return false;
        }
        evaluate();
        return true;
    }

    void pop_member() {
        int x = members_.back();
        int from = undo_.back();
        undo_.pop_back();
        // Members are stack-ordered, so the entries x appended form the
        // current suffix; shared neighbors just lose one reference.
        for (int k : graph_.neighbors(x)) {
            if (!kept_[static_cast<std::size_t>(k)]) continue;
            if (--cnt_[static_cast<std::size_t>(k)] == 0) sum_rem_ -= w_[static_cast<std::size_t>(k)];
        }
        removals_.resize(static_cast<std::size_t>(from));
        sum_add_ -= w_[static_cast<std::size_t>(x)];
        members_.pop_back();
    }

    void evaluate() {
        long double gain = sum_add_ - sum_rem_;
        if (gain <= 0.0L) return;
        if (best_ && gain < best_gain_) return;
        std::vector<int> add_ids = members_;
        std::sort(add_ids.begin(), add_ids.end());
        std::vector<int> rem_ids = removals_;
        std::sort(rem_ids.begin(), rem_ids.end());
        if (best_ && gain == best_gain_ &&
            !swap_order_less(add_ids, rem_ids, best_->add, best_->remove))
            return;
        if (!footprint_fits(add_ids, rem_ids)) return;
        best_gain_ = gain;
        best_ = Swap{std::move(rem_ids), std::move(add_ids)};
    }

    // Some grain center must admit a side-m cube containing every ball of
    // the footprint.
    bool footprint_fits(const std::vector<int>& add_ids, const std::vector<int>& rem_ids) {
        if (always_fits_) return true;
        const Vec& around = config_.grain(add_ids.front()).center;
        for (int center : grid_.centers_in_cube(around, 0.5 * m_)) {
            const Vec& cc = config_.grain(center).center;
            bool ok = true;
            for (const auto* list : {&add_ids, &rem_ids}) {
                for (int id : *list)
                    if (!ball_in_cube(config_.window, cc, config_.grain(id), m_)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (ok) return true;
        }
        return false;
    }

    std::vector<int> new_interaction_nbrs(int x) {
        std::vector<int> out;
        for (int k : graph_.neighbors(x)) {
            if (!kept_[static_cast<std::size_t>(k)]) continue;
            for (int e : graph_.neighbors(k)) {
                if (kept_[static_cast<std::size_t>(e)] || e <= anchor_ ||
                    seen_[static_cast<std::size_t>(e)])
                    continue;
                seen_[static_cast<std::size_t>(e)] = 1;
                out.push_back(e);
            }
        }
        return out;
    }

    void grow(const std::vector<int>& cand) {
        if (static_cast<int>(members_.size()) == s_max_) return;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            int x = cand[i];
            if (!push(x)) continue;  // x stays banned for the remaining branches
            if (static_cast<int>(members_.size()) < s_max_) {
                std::vector<int> fresh = new_interaction_nbrs(x);
                std::vector<int> next(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end());
                next.insert(next.end(), fresh.begin(), fresh.end());
                grow(next);
                for (int y : fresh) seen_[static_cast<std::size_t>(y)] = 0;
            }
            pop_member();
        }
    }

    const Configuration& config_;
    const ContactGraph& graph_;
    WeightSpec h_;
    double m_;
    int s_max_;
    SpatialGrid grid_;
    std::vector<long double> w_;
    std::vector<char> kept_, seen_;
    std::vector<int> cnt_;
    std::vector<int> members_, removals_, undo_;
    long double sum_add_ = 0.0L, sum_rem_ = 0.0L;
    int anchor_ = 0;
    bool always_fits_ = false;
    std::optional<Swap> best_;
    long double best_gain_ = 0.0L;
};

}  // namespace detail

struct LocalImproveResult {
    Thinning thinning;
    int rounds = 0;
    bool converged = false;  // no (s_max, m)-valid swap remains
    long double total_weight = 0.0L;
    int s_max = 0;
    double m = 0.0;
};

// Sequential best-swap improvement: each round applies the best remaining
// connected valid swap until none exists or max_rounds is hit. Every
// applied swap strictly increases the total weight, so the loop terminates.
inline LocalImproveResult local_improve(const Configuration& config, const Thinning& t0,
                                        const WeightSpec& h, double m, int s_max,
                                        int max_rounds = 1000000) {
    if (!t0.hard_core || !verify_hard_core(config, t0.kept))
        throw std::invalid_argument("local_improve requires a hard-core start");
    if (s_max < 1) throw std::invalid_argument("s_max must be at least 1");
    {
        std::vector<int> all(static_cast<std::size_t>(config.size()));
        for (int i = 0; i < config.size(); ++i) all[static_cast<std::size_t>(i)] = i;
        detail::check_weight_range(all, config, h);
    }

    ContactGraph graph = build_contact_graph(config);
    detail::SwapEngine engine(config, graph, h, m, s_max);
    engine.set_kept(t0.kept);

    LocalImproveResult result;
    result.s_max = s_max;
    result.m = m;
    while (result.rounds < max_rounds) {
        std::optional<Swap> swap = engine.best_swap();
        if (!swap) {
            result.converged = true;
            break;
        }
        engine.apply(*swap);
        ++result.rounds;
    }
    result.thinning.kept = engine.kept_ids();
    result.thinning.source = "local_improve";
    result.thinning.hard_core = verify_hard_core(config, result.thinning.kept);
    result.total_weight = thinning_weight_sum(result.thinning.kept, config, h);
    return result;
}

}  // namespace hct
