#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cutpoly/errors.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/lp/simplex.hpp"

namespace cutpoly::lp {

/// A model rewritten as A z >= b, z >= 0 (minimize). LE rows are negated,
/// EQ rows split into a >= / negated-LE pair, upper bounds become rows.
template <typename T>
struct CanonicalForm {
    std::vector<std::vector<std::pair<int, T>>> rows;  // sparse A
    std::vector<T> rhs;                                // b
    std::vector<std::pair<int, int>> origin;           // (native row, +1/-1); ub rows: (-1-col, -1)

    int num_rows() const { return static_cast<int>(rows.size()); }
};

template <typename T>
CanonicalForm<T> canonicalize(const Model<T>& m) {
    CanonicalForm<T> cf;
    auto negated = [](const std::vector<std::pair<int, T>>& cs) {
        std::vector<std::pair<int, T>> out;
        out.reserve(cs.size());
        for (const auto& [c, v] : cs) out.emplace_back(c, T{} - v);
        return out;
    };
    const auto& rows = m.rows();
    for (int i = 0; i < m.num_rows(); ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        if (r.sense == RowSense::GE || r.sense == RowSense::EQ) {
            cf.rows.push_back(r.coeffs);
            cf.rhs.push_back(r.rhs);
            cf.origin.emplace_back(i, +1);
        }
        if (r.sense == RowSense::LE || r.sense == RowSense::EQ) {
            cf.rows.push_back(negated(r.coeffs));
            cf.rhs.push_back(T{} - r.rhs);
            cf.origin.emplace_back(i, -1);
        }
    }
    const auto& vars = m.variables();
    for (int c = 0; c < m.num_cols(); ++c) {
        if (!vars[static_cast<std::size_t>(c)].upper) continue;
        cf.rows.push_back({{c, T{} - scalar_traits<T>::from_int(1)}});
        cf.rhs.push_back(T{} - *vars[static_cast<std::size_t>(c)].upper);
        cf.origin.emplace_back(-1 - c, -1);
    }
    return cf;
}

/// Nonnegative dual vector for the canonical >=-form, certified against the
/// model's objective row: y.A <= t columnwise and y.b equal to the optimum.
template <typename T>
struct CertifiedDual {
    CanonicalForm<T> form;
    std::vector<T> y;  // >= 0, one per canonical row
    T y_dot_b{};
};

template <typename T>
CertifiedDual<T> dual_rows(const Model<T>& m, const Solution<T>& sol, double tol = 1e-9) {
    require(m.obj_sense() == ObjSense::Minimize, Errc::parameter,
            "dual_rows expects a minimization model");
    require(sol.status == SolveStatus::Optimal, Errc::parameter,
            "dual_rows needs an optimal solution");
    CertifiedDual<T> out;
    out.form = canonicalize(m);
    out.y.assign(out.form.rows.size(), T{});
    for (std::size_t k = 0; k < out.form.rows.size(); ++k) {
        auto [orig, dir] = out.form.origin[k];
        if (orig < 0) continue;  // upper-bound rows carry no native dual here
        const T& yn = sol.dual[static_cast<std::size_t>(orig)];
        RowSense s = m.rows()[static_cast<std::size_t>(orig)].sense;
        T v{};
        if (s == RowSense::GE) {
            v = yn;  // >= 0 at optimality
        } else if (s == RowSense::LE) {
            v = T{} - yn;
        } else {
            // split free multiplier into positive/negative parts
            if (dir > 0)
                v = scalar_traits<T>::is_neg(yn, 0) ? T{} : yn;
            else
                v = scalar_traits<T>::is_neg(yn, 0) ? T{} - yn : T{};
        }
        if (scalar_traits<T>::is_neg(v, tol))
            fail(Errc::internal_consistency, "negative canonical dual");
        if (scalar_traits<T>::is_neg(v, 0)) v = T{};  // clamp float noise
        out.y[k] = v;
    }

    // verify y.A <= t columnwise
    std::vector<T> yA(static_cast<std::size_t>(m.num_cols()), T{});
    for (std::size_t k = 0; k < out.form.rows.size(); ++k) {
        if (scalar_traits<T>::is_zero(out.y[k], 0)) continue;
        for (const auto& [c, v] : out.form.rows[k]) yA[static_cast<std::size_t>(c)] += out.y[k] * v;
    }
    for (int c = 0; c < m.num_cols(); ++c) {
        T t = m.objective_coeff(c);
        if (scalar_traits<T>::is_neg(t - yA[static_cast<std::size_t>(c)], tol))
            fail(Errc::internal_consistency,
                 "dual infeasible on column " + m.var_name(c));
    }
    for (std::size_t k = 0; k < out.form.rows.size(); ++k)
        out.y_dot_b += out.y[k] * out.form.rhs[k];
    T gap = out.y_dot_b - sol.objective;
    if (!scalar_traits<T>::is_zero(gap, 10 * tol))
        fail(Errc::internal_consistency, "dual objective mismatch");
    return out;
}

}  // namespace cutpoly::lp
