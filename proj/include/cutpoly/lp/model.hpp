#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cutpoly/errors.hpp"
#include "cutpoly/rational.hpp"

namespace cutpoly::lp {

enum class RowSense { LE, EQ, GE };
enum class ObjSense { Minimize, Maximize };

inline const char* row_sense_str(RowSense s) {
    switch (s) {
        case RowSense::LE: return "<=";
        case RowSense::EQ: return "=";
        case RowSense::GE: return ">=";
    }
    return "?";
}

template <typename T>
struct Row {
    std::string name;
    std::vector<std::pair<int, T>> coeffs;  // (column, value), columns unique
    RowSense sense = RowSense::LE;
    T rhs{};
};

template <typename T>
struct Variable {
    std::string name;
    std::optional<T> upper;  // lower bound is always 0
};

struct FormulationMeta {
    std::string tag;                            // e.g. "alpha", "beta", "w-small"
    std::map<std::string, std::string> params;  // printable parameter record
};

/// Generic LP: optimize c.z subject to rows {<=,=,>=} rhs, z >= 0.
/// Immutable once sealed; all builders hand out sealed models.
template <typename T>
class Model {
public:
    int add_variable(const std::string& name, std::optional<T> upper = std::nullopt) {
        require(!sealed_, Errc::parameter, "model is sealed");
        require(index_.find(name) == index_.end(), Errc::parameter,
                "duplicate variable name: " + name);
        int id = static_cast<int>(vars_.size());
        vars_.push_back(Variable<T>{name, std::move(upper)});
        index_[name] = id;
        return id;
    }

    void add_row(const std::string& name, std::vector<std::pair<int, T>> coeffs, RowSense sense,
                 T rhs) {
        require(!sealed_, Errc::parameter, "model is sealed");
        for (auto& [col, v] : coeffs)
            require(col >= 0 && col < static_cast<int>(vars_.size()), Errc::parameter,
                    "row references undeclared variable");
        rows_.push_back(Row<T>{name, std::move(coeffs), sense, std::move(rhs)});
    }

    void set_objective(ObjSense sense, std::vector<std::pair<int, T>> coeffs) {
        require(!sealed_, Errc::parameter, "model is sealed");
        obj_sense_ = sense;
        obj_ = std::move(coeffs);
    }

    void set_meta(FormulationMeta m) { meta_ = std::move(m); }

    void seal() { sealed_ = true; }
    bool sealed() const { return sealed_; }

    int num_rows() const { return static_cast<int>(rows_.size()); }
    int num_cols() const { return static_cast<int>(vars_.size()); }

    const std::vector<Row<T>>& rows() const { return rows_; }
    const std::vector<Variable<T>>& variables() const { return vars_; }
    const std::vector<std::pair<int, T>>& objective() const { return obj_; }
    ObjSense obj_sense() const { return obj_sense_; }
    const FormulationMeta& meta() const { return meta_; }

    int var_index(const std::string& name) const {
        auto it = index_.find(name);
        require(it != index_.end(), Errc::parameter, "unknown variable: " + name);
        return it->second;
    }
    bool has_var(const std::string& name) const { return index_.count(name) > 0; }
    const std::string& var_name(int col) const { return vars_[static_cast<std::size_t>(col)].name; }

    T objective_coeff(int col) const {
        for (const auto& [c, v] : obj_)
            if (c == col) return v;
        return T{};
    }

    /// Row activity under a full assignment (by column index).
    T row_activity(const Row<T>& row, const std::vector<T>& z) const {
        T a{};
        for (const auto& [col, v] : row.coeffs) a += v * z[static_cast<std::size_t>(col)];
        return a;
    }

    /// Names of rows violated by z (tolerance only used by the float backend).
    std::vector<std::string> violated_rows(const std::vector<T>& z, double tol = 1e-9) const {
        std::vector<std::string> bad;
        for (const auto& row : rows_) {
            T a = row_activity(row, z);
            T slack = row.rhs - a;  // >= 0 ok for LE, <= 0 ok for GE
            bool ok = true;
            switch (row.sense) {
                case RowSense::LE: ok = !scalar_traits<T>::is_neg(slack, tol); break;
                case RowSense::GE: ok = !scalar_traits<T>::is_neg(-slack, tol); break;
                case RowSense::EQ: ok = scalar_traits<T>::is_zero(slack, tol); break;
            }
            if (!ok) bad.push_back(row.name);
        }
        for (const auto& v : vars_) {
            int col = var_index(v.name);
            const T& val = z[static_cast<std::size_t>(col)];
            if (scalar_traits<T>::is_neg(val, tol)) bad.push_back(v.name + " >= 0");
            if (v.upper && scalar_traits<T>::is_neg(*v.upper - val, tol))
                bad.push_back(v.name + " <= ub");
        }
        return bad;
    }

    T objective_value(const std::vector<T>& z) const {
        T s{};
        for (const auto& [col, v] : obj_) s += v * z[static_cast<std::size_t>(col)];
        return s;
    }

private:
    std::vector<Variable<T>> vars_;
    std::vector<Row<T>> rows_;
    std::vector<std::pair<int, T>> obj_;
    ObjSense obj_sense_ = ObjSense::Minimize;
    std::map<std::string, int> index_;
    FormulationMeta meta_;
    bool sealed_ = false;
};

/// Full column vector from a name -> value map; unnamed columns are 0.
template <typename T>
std::vector<T> named_assignment(const Model<T>& m, const std::map<std::string, T>& vals) {
    std::vector<T> z(static_cast<std::size_t>(m.num_cols()), T{});
    for (const auto& [name, v] : vals) z[static_cast<std::size_t>(m.var_index(name))] = v;
    return z;
}

enum class SolveStatus { Optimal, Infeasible, Unbounded };

inline const char* status_str(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

template <typename T>
struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<T> primal;  // by column
    std::vector<T> dual;    // by row; min: >=0 on GE rows, <=0 on LE rows
    T objective{};
    long pivots = 0;
    std::vector<int> basis_sequence;  // entering columns, for determinism checks

    const T& value_of(const Model<T>& m, const std::string& var) const {
        return primal[static_cast<std::size_t>(m.var_index(var))];
    }
};

}  // namespace cutpoly::lp
