#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cutpoly/config.hpp"
#include "cutpoly/errors.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/rational.hpp"

namespace cutpoly::lp {

struct SolveOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    long max_iters = 0;  // 0: pick from model size (float backend stall guard)
};

/// Dense two-phase tableau simplex over an exact (Rat) or float (double)
/// scalar. Pivot rule is Dantzig with a deterministic fallback to Bland's
/// rule while a degenerate run lasts, so termination is guaranteed and the
/// basis sequence is reproducible. Duals are read from the bookkeeping
/// columns (slack/surplus/artificial) of the final tableau.
template <typename T>
class Simplex {
    using Tr = scalar_traits<T>;

public:
    explicit Simplex(const Model<T>& model, SolveOptions opts = {})
        : model_(model), opts_(opts) {}

    Solution<T> solve() {
        build_tableau();
        Solution<T> out;
        if (!phase1()) {
            out.status = SolveStatus::Infeasible;
            out.pivots = pivots_;
            out.basis_sequence = entering_log_;
            return out;
        }
        drive_out_artificials();
        bool bounded = phase2();
        out.pivots = pivots_;
        out.basis_sequence = entering_log_;
        if (!bounded) {
            out.status = SolveStatus::Unbounded;
            return out;
        }
        out.status = SolveStatus::Optimal;
        extract(out);
        return out;
    }

private:
    // --- tableau construction -------------------------------------------

    void build_tableau() {
        const auto& vars = model_.variables();
        nstruct_ = static_cast<int>(vars.size());
        maximize_ = model_.obj_sense() == ObjSense::Maximize;

        // native rows first, then internal upper-bound rows
        struct RawRow {
            std::vector<std::pair<int, T>> coeffs;
            RowSense sense;
            T rhs;
        };
        std::vector<RawRow> raw;
        for (const auto& r : model_.rows()) raw.push_back({r.coeffs, r.sense, r.rhs});
        for (int c = 0; c < nstruct_; ++c)
            if (vars[static_cast<std::size_t>(c)].upper)
                raw.push_back({{{c, Tr::from_int(1)}}, RowSense::LE,
                               *vars[static_cast<std::size_t>(c)].upper});

        nrows_ = static_cast<int>(raw.size());
        // column layout: [structural | one slack or surplus per LE/GE row | artificials]
        nslack_ = 0;
        for (const auto& r : raw)
            if (r.sense != RowSense::EQ) ++nslack_;

        slack_col_.assign(static_cast<std::size_t>(nrows_), -1);
        art_col_.assign(static_cast<std::size_t>(nrows_), -1);
        sigma_.assign(static_cast<std::size_t>(nrows_), 1);
        sense_.resize(static_cast<std::size_t>(nrows_));
        rhs_orig_.resize(static_cast<std::size_t>(nrows_));

        int next_slack = nstruct_;
        std::vector<int> art_rows;
        for (int i = 0; i < nrows_; ++i) {
            const auto& r = raw[static_cast<std::size_t>(i)];
            sense_[static_cast<std::size_t>(i)] = r.sense;
            rhs_orig_[static_cast<std::size_t>(i)] = r.rhs;
            if (r.sense != RowSense::EQ) slack_col_[static_cast<std::size_t>(i)] = next_slack++;
            bool neg = Tr::is_neg(r.rhs, 0);  // exact sign; doubles: plain sign
            if constexpr (!Tr::exact) neg = r.rhs < 0;
            if (neg) sigma_[static_cast<std::size_t>(i)] = -1;
            // artificial needed unless the slack column comes out as +e_i
            bool slack_is_basis = (r.sense == RowSense::LE && !neg) ||
                                  (r.sense == RowSense::GE && neg);
            if (!slack_is_basis) art_rows.push_back(i);
        }
        nart_ = static_cast<int>(art_rows.size());
        int next_art = nstruct_ + nslack_;
        for (int i : art_rows) art_col_[static_cast<std::size_t>(i)] = next_art++;

        width_ = nstruct_ + nslack_ + nart_;
        tab_.assign(static_cast<std::size_t>(nrows_),
                    std::vector<T>(static_cast<std::size_t>(width_) + 1, T{}));
        basis_.assign(static_cast<std::size_t>(nrows_), -1);
        alive_.assign(static_cast<std::size_t>(nrows_), true);

        for (int i = 0; i < nrows_; ++i) {
            auto& row = tab_[static_cast<std::size_t>(i)];
            const auto& r = raw[static_cast<std::size_t>(i)];
            T s = Tr::from_int(sigma_[static_cast<std::size_t>(i)]);
            for (const auto& [col, v] : r.coeffs) row[static_cast<std::size_t>(col)] += s * v;
            if (r.sense == RowSense::LE)
                row[static_cast<std::size_t>(slack_col_[static_cast<std::size_t>(i)])] = s;
            else if (r.sense == RowSense::GE)
                row[static_cast<std::size_t>(slack_col_[static_cast<std::size_t>(i)])] = -s;
            row[static_cast<std::size_t>(width_)] = s * r.rhs;
            if (art_col_[static_cast<std::size_t>(i)] >= 0) {
                row[static_cast<std::size_t>(art_col_[static_cast<std::size_t>(i)])] =
                    Tr::from_int(1);
                basis_[static_cast<std::size_t>(i)] = art_col_[static_cast<std::size_t>(i)];
            } else {
                basis_[static_cast<std::size_t>(i)] = slack_col_[static_cast<std::size_t>(i)];
            }
        }

        // phase-2 structural costs in minimize orientation
        cost_.assign(static_cast<std::size_t>(width_), T{});
        for (const auto& [col, v] : model_.objective())
            cost_[static_cast<std::size_t>(col)] += maximize_ ? -v : v;

        if (opts_.max_iters == 0)
            opts_.max_iters = Tr::exact ? 0 : 2000 + 200L * (nrows_ + width_);
    }

    bool is_artificial(int col) const { return col >= nstruct_ + nslack_; }

    void compute_reduced(const std::vector<T>& c) {
        d_.assign(static_cast<std::size_t>(width_), T{});
        obj_ = T{};
        // y = c_B B^-1 folded in: d_j = c_j - sum_i c_basis(i) * tab[i][j]
        for (int j = 0; j < width_; ++j) d_[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
        for (int i = 0; i < nrows_; ++i) {
            if (!alive_[static_cast<std::size_t>(i)]) continue;
            const T& cb = c[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
            if (Tr::is_zero(cb, 0)) continue;
            const auto& row = tab_[static_cast<std::size_t>(i)];
            for (int j = 0; j < width_; ++j)
                if (!Tr::is_zero(row[static_cast<std::size_t>(j)], 0))
                    d_[static_cast<std::size_t>(j)] -= cb * row[static_cast<std::size_t>(j)];
            obj_ += cb * row[static_cast<std::size_t>(width_)];
        }
    }

    // --- pivoting ---------------------------------------------------------

    int pick_entering(bool bland, bool allow_art) const {
        int best = -1;
        const T* best_d = nullptr;
        for (int j = 0; j < width_; ++j) {
            if (!allow_art && is_artificial(j)) continue;
            const T& dj = d_[static_cast<std::size_t>(j)];
            if (!Tr::is_neg(dj, opts_.opt_tol)) continue;
            if (bland) return j;
            if (best < 0 || dj < *best_d) {
                best = j;
                best_d = &dj;
            }
        }
        return best;
    }

    int pick_leaving(int e) const {
        int best = -1;
        T best_ratio{};
        for (int i = 0; i < nrows_; ++i) {
            if (!alive_[static_cast<std::size_t>(i)]) continue;
            const T& a = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
            if (!is_pos(a)) continue;
            T ratio = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(width_)] / a;
            if (best < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                            basis_[static_cast<std::size_t>(best)])) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    bool is_pos(const T& v) const {
        if constexpr (Tr::exact) return sgn(v) > 0;
        else return v > opts_.feas_tol;
    }

    void pivot(int pr, int e) {
        auto& prow = tab_[static_cast<std::size_t>(pr)];
        T inv = Tr::from_int(1) / prow[static_cast<std::size_t>(e)];
        nz_.clear();
        for (int j = 0; j <= width_; ++j) {
            T& v = prow[static_cast<std::size_t>(j)];
            if (Tr::is_zero(v, 0)) {
                if constexpr (!Tr::exact) v = 0;  // keep hard zeros for sparsity
                continue;
            }
            v *= inv;
            nz_.push_back(j);
        }
        for (int i = 0; i < nrows_; ++i) {
            if (i == pr || !alive_[static_cast<std::size_t>(i)]) continue;
            auto& row = tab_[static_cast<std::size_t>(i)];
            T f = row[static_cast<std::size_t>(e)];
            if (Tr::is_zero(f, 0)) continue;
            for (int j : nz_)
                row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(e)] = T{};  // exact by construction
            if constexpr (!Tr::exact) drop_noise(row);
        }
        {
            T f = d_[static_cast<std::size_t>(e)];
            if (!Tr::is_zero(f, 0)) {
                for (int j : nz_) {
                    if (j == width_) continue;
                    d_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
                }
                obj_ += f * prow[static_cast<std::size_t>(width_)];
                d_[static_cast<std::size_t>(e)] = T{};
            }
        }
        basis_[static_cast<std::size_t>(pr)] = e;
        ++pivots_;
        entering_log_.push_back(e);
    }

    void drop_noise(std::vector<T>& row) const {
        if constexpr (!Tr::exact) {
            for (auto& v : row)
                if (v != 0 && std::fabs(v) < 1e-12) v = 0;
        }
    }

    /// Runs the simplex loop on the current cost row. Returns false on
    /// unboundedness (only possible in phase 2).
    bool iterate(bool allow_art) {
        int degenerate_run = 0;
        bool bland = false;
        while (true) {
            if (opts_.max_iters > 0 && pivots_ > opts_.max_iters)
                fail(Errc::solver_failure, "simplex stalled (iteration limit)");
            int e = pick_entering(bland, allow_art);
            if (e < 0) return true;
            int l = pick_leaving(e);
            if (l < 0) return false;
            T before = obj_;
            pivot(l, e);
            bool improved;
            if constexpr (Tr::exact) improved = obj_ < before;
            else improved = obj_ < before - opts_.opt_tol;
            if (improved) {
                degenerate_run = 0;
                bland = false;
            } else if (!bland && ++degenerate_run >= kDegenerateRunLimit) {
                bland = true;  // Bland's rule until the objective moves again
            }
        }
    }

    bool phase1() {
        if (nart_ == 0) {
            compute_reduced(cost_);  // phase 2 starts directly
            phase1_skipped_ = true;
            return true;
        }
        std::vector<T> c(static_cast<std::size_t>(width_), T{});
        for (int j = nstruct_ + nslack_; j < width_; ++j)
            c[static_cast<std::size_t>(j)] = Tr::from_int(1);
        compute_reduced(c);
        iterate(/*allow_art=*/true);
        if constexpr (Tr::exact) {
            if (sgn(obj_) > 0) return false;
        } else {
            if (obj_ > opts_.feas_tol) return false;
        }
        return true;
    }

    void drive_out_artificials() {
        if (nart_ == 0) return;
        for (int i = 0; i < nrows_; ++i) {
            if (!alive_[static_cast<std::size_t>(i)]) continue;
            if (!is_artificial(basis_[static_cast<std::size_t>(i)])) continue;
            const auto& row = tab_[static_cast<std::size_t>(i)];
            int e = -1;
            for (int j = 0; j < nstruct_ + nslack_; ++j) {
                if (!Tr::is_zero(row[static_cast<std::size_t>(j)], opts_.feas_tol)) {
                    e = j;
                    break;
                }
            }
            if (e >= 0) {
                pivot(i, e);
            } else {
                alive_[static_cast<std::size_t>(i)] = false;  // redundant constraint
            }
        }
        compute_reduced(cost_);
    }

    bool phase2() {
        if (!phase1_skipped_) {
            // reduced costs were refreshed in drive_out_artificials when needed
            if (nart_ == 0) compute_reduced(cost_);
        }
        return iterate(/*allow_art=*/false);
    }

    // --- extraction -------------------------------------------------------

    void extract(Solution<T>& out) {
        out.primal.assign(static_cast<std::size_t>(nstruct_), T{});
        for (int i = 0; i < nrows_; ++i) {
            if (!alive_[static_cast<std::size_t>(i)]) continue;
            int b = basis_[static_cast<std::size_t>(i)];
            if (b < nstruct_)
                out.primal[static_cast<std::size_t>(b)] =
                    tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(width_)];
        }
        out.objective = maximize_ ? T{} - obj_ : obj_;

        int native_rows = model_.num_rows();
        out.dual.assign(static_cast<std::size_t>(native_rows), T{});
        for (int i = 0; i < native_rows; ++i) {
            T y{};
            if (!alive_[static_cast<std::size_t>(i)]) {
                y = T{};  // redundant row: multiplier 0 is always valid
            } else if (sense_[static_cast<std::size_t>(i)] == RowSense::LE) {
                y = T{} - d_[static_cast<std::size_t>(slack_col_[static_cast<std::size_t>(i)])];
            } else if (sense_[static_cast<std::size_t>(i)] == RowSense::GE) {
                y = d_[static_cast<std::size_t>(slack_col_[static_cast<std::size_t>(i)])];
            } else {
                T da = d_[static_cast<std::size_t>(art_col_[static_cast<std::size_t>(i)])];
                y = Tr::from_int(-sigma_[static_cast<std::size_t>(i)]) * da;
            }
            out.dual[static_cast<std::size_t>(i)] = maximize_ ? T{} - y : y;
        }
    }

    static constexpr int kDegenerateRunLimit = 40;

    const Model<T>& model_;
    SolveOptions opts_;
    bool maximize_ = false;
    bool phase1_skipped_ = false;

    int nstruct_ = 0, nslack_ = 0, nart_ = 0, nrows_ = 0, width_ = 0;
    std::vector<std::vector<T>> tab_;
    std::vector<T> d_, cost_;
    T obj_{};
    std::vector<int> basis_, slack_col_, art_col_, sigma_;
    std::vector<RowSense> sense_;
    std::vector<T> rhs_orig_;
    std::vector<bool> alive_;
    std::vector<int> nz_;
    long pivots_ = 0;
    std::vector<int> entering_log_;
};

/// Solves a sealed model. Exact backend when T = Rat, float when T = double.
template <typename T>
Solution<T> solve(const Model<T>& model, SolveOptions opts = {}) {
    require(model.sealed(), Errc::parameter, "model must be sealed before solving");
    Simplex<T> s(model, opts);
    Solution<T> sol = s.solve();
    if (sol.status == SolveStatus::Optimal) {
        // strong duality self-check; a gap here is a solver bug, not user error
        T ydotb{};
        const auto& rows = model.rows();
        for (std::size_t i = 0; i < rows.size(); ++i) ydotb += sol.dual[i] * rows[i].rhs;
        // account for internal upper-bound rows: they contribute to the
        // objective but carry no user-visible dual; re-check primal instead.
        bool has_ub = false;
        for (const auto& v : model.variables())
            if (v.upper) has_ub = true;
        if (!has_ub) {
            if constexpr (scalar_traits<T>::exact) {
                require(ydotb == sol.objective, Errc::internal_consistency,
                        "strong duality gap in exact solve");
            }
        }
    }
    return sol;
}

}  // namespace cutpoly::lp
