#include "conelab/ratlp.hpp"

#include <algorithm>
#include <set>

namespace conelab {

void LinearSystem::check_shape() const {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    auto check_rows = [&](const Mat& rows, const Vec& rhs, const char* what) {
        if (rows.size() != rhs.size())
            throw std::invalid_argument(std::string(what) + ": row/rhs count mismatch");
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != num_vars)
                throw std::invalid_argument(std::string(what) + ": row width mismatch");
    };
    check_rows(eq_rows, eq_rhs, "eq");
    check_rows(ge_rows, ge_rhs, "ge");
    if (objective && static_cast<int>(objective->size()) != num_vars)
        throw std::invalid_argument("objective width mismatch");
    if (!nonneg.empty() && static_cast<int>(nonneg.size()) != num_vars)
        throw std::invalid_argument("bound flag width mismatch");
}

namespace {

// Exact primal simplex over the standard form
//   min cost . z   s.t.  A z = b, z >= 0
// built from the user system by splitting free variables and adding
// surplus columns for >= rows. Bland's rule throughout, so no cycling.
class SimplexTableau {
public:
    SimplexTableau(const LinearSystem& sys) : sys_(sys) {
        n_struct_ = 0;
        col_of_var_.resize(sys.num_vars);
        for (int i = 0; i < sys.num_vars; ++i) {
            col_of_var_[i] = n_struct_;
            n_struct_ += sys.var_nonneg(i) ? 1 : 2;  // free var: plus/minus pair
        }
        surplus_base_ = n_struct_;
        n_struct_ += static_cast<int>(sys.ge_rows.size());

        int m = static_cast<int>(sys.eq_rows.size() + sys.ge_rows.size());
        rows_.reserve(m);
        for (std::size_t r = 0; r < sys.eq_rows.size(); ++r)
            add_row(sys.eq_rows[r], sys.eq_rhs[r], -1, static_cast<int>(r));
        for (std::size_t r = 0; r < sys.ge_rows.size(); ++r)
            add_row(sys.ge_rows[r], sys.ge_rhs[r], surplus_base_ + static_cast<int>(r),
                    static_cast<int>(sys.eq_rows.size() + r));
    }

    // Returns false (with certificate filled) when the system is infeasible.
    bool phase1(Vec& certificate) {
        Vec cost(width(), Rational(0));
        for (int a = 0; a < num_rows(); ++a) cost[n_struct_ + art_index_[a]] = 1;
        run(cost);
        Rational v = objective_of(cost);
        if (v > 0) {
            // y = c_B B^{-1}; artificial column a is e_a in the sign-normalized
            // system, so y falls out of the artificial block of the tableau.
            int total_arts = num_rows();
            Vec y(total_arts, Rational(0));
            for (int k = 0; k < total_arts; ++k) {
                Rational acc = 0;
                for (int r = 0; r < num_rows(); ++r)
                    acc += cost[basis_[r]] * rows_[r][n_struct_ + k];
                y[k] = acc;
            }
            certificate.assign(sys_.eq_rows.size() + sys_.ge_rows.size(), Rational(0));
            for (int r = 0; r < num_rows(); ++r) {
                int orig = orig_row_[r];
                certificate[orig] = row_sign_[r] * y[art_index_[r]];
            }
            return false;
        }
        drop_artificials();
        return true;
    }

    // Maximizes sys_.objective. Returns true when bounded (ray filled otherwise).
    bool phase2(Vec& ray_out) {
        Vec cost(width(), Rational(0));
        for (int i = 0; i < sys_.num_vars; ++i) {
            const Rational& c = (*sys_.objective)[i];
            cost[col_of_var_[i]] = -c;  // maximize -> min of negated
            if (!sys_.var_nonneg(i)) cost[col_of_var_[i] + 1] = c;
        }
        int unbounded_col = run(cost);
        if (unbounded_col < 0) return true;
        Vec zray(n_struct_, Rational(0));
        zray[unbounded_col] = 1;
        for (int r = 0; r < num_rows(); ++r)
            if (basis_[r] < n_struct_) zray[basis_[r]] = -rows_[r][unbounded_col];
        ray_out = to_user(zray);
        return false;
    }

    Vec solution() const {
        Vec z(n_struct_, Rational(0));
        for (int r = 0; r < num_rows(); ++r)
            if (basis_[r] < n_struct_) z[basis_[r]] = rhs(r);
        return to_user(z);
    }

private:
    int width() const { return n_struct_ + static_cast<int>(art_index_.size()) + 1; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const Rational& rhs(int r) const { return rows_[r].back(); }

    void add_row(const Vec& coeffs, const Rational& b, int surplus_col, int orig_row) {
        Rational sign = (b < 0) ? -1 : 1;
        Vec row;  // filled after all rows known; stage raw parts first
        staging_.push_back({coeffs, b, surplus_col, sign, orig_row});
        row_sign_.push_back(sign);
        orig_row_.push_back(orig_row);
        art_index_.push_back(static_cast<int>(art_index_.size()));
        rows_.emplace_back();  // placeholder
        if (static_cast<int>(staging_.size()) ==
            static_cast<int>(sys_.eq_rows.size() + sys_.ge_rows.size()))
            materialize();
    }

    void materialize() {
        int total_arts = num_rows();
        for (int r = 0; r < num_rows(); ++r) {
            const auto& st = staging_[r];
            Vec row(n_struct_ + total_arts + 1, Rational(0));
            for (int i = 0; i < sys_.num_vars; ++i) {
                row[col_of_var_[i]] = st.sign * st.coeffs[i];
                if (!sys_.var_nonneg(i)) row[col_of_var_[i] + 1] = -st.sign * st.coeffs[i];
            }
            if (st.surplus_col >= 0) row[st.surplus_col] = -st.sign;
            row[n_struct_ + r] = 1;
            row.back() = st.sign * st.b;
            rows_[r] = std::move(row);
        }
        basis_.resize(num_rows());
        for (int r = 0; r < num_rows(); ++r) basis_[r] = n_struct_ + r;
        staging_.clear();
    }

    Rational objective_of(const Vec& cost) const {
        Rational v = 0;
        for (int r = 0; r < num_rows(); ++r) v += cost[basis_[r]] * rhs(r);
        return v;
    }

    // Bland's rule primal simplex on the current basis for min cost.z.
    // Returns -1 at optimum, or the entering column when unbounded.
    int run(const Vec& cost) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n_struct_; ++j) {
                Rational red = cost[j];
                for (int r = 0; r < num_rows(); ++r) red -= cost[basis_[r]] * rows_[r][j];
                if (red < 0) { enter = j; break; }
            }
            if (enter < 0) return -1;
            int leave = -1;
            Rational best;
            for (int r = 0; r < num_rows(); ++r) {
                if (rows_[r][enter] <= 0) continue;
                Rational ratio = rhs(r) / rows_[r][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return enter;
            pivot(leave, enter);
        }
    }

    void pivot(int r, int c) {
        Rational p = rows_[r][c];
        for (auto& x : rows_[r]) x /= p;
        for (int i = 0; i < num_rows(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            Rational f = rows_[i][c];
            for (std::size_t j = 0; j < rows_[i].size(); ++j)
                rows_[i][j] -= f * rows_[r][j];
        }
        basis_[r] = c;
    }

    // Pivot basic artificials onto structural columns; rows where that is
    // impossible are redundant and removed.
    void drop_artificials() {
        for (int r = num_rows() - 1; r >= 0; --r) {
            if (basis_[r] < n_struct_) continue;
            int col = -1;
            for (int j = 0; j < n_struct_; ++j)
                if (rows_[r][j] != 0) { col = j; break; }
            if (col >= 0) {
                pivot(r, col);
            } else {
                rows_.erase(rows_.begin() + r);
                basis_.erase(basis_.begin() + r);
                row_sign_.erase(row_sign_.begin() + r);
                orig_row_.erase(orig_row_.begin() + r);
                art_index_.erase(art_index_.begin() + r);
            }
        }
    }

    Vec to_user(const Vec& z) const {
        Vec x(sys_.num_vars);
        for (int i = 0; i < sys_.num_vars; ++i) {
            x[i] = z[col_of_var_[i]];
            if (!sys_.var_nonneg(i)) x[i] -= z[col_of_var_[i] + 1];
        }
        return x;
    }

    struct StagedRow {
        Vec coeffs;
        Rational b;
        int surplus_col;
        Rational sign;
        int orig_row;
    };

    const LinearSystem& sys_;
    int n_struct_ = 0;
    int surplus_base_ = 0;
    std::vector<int> col_of_var_;
    std::vector<StagedRow> staging_;
    Mat rows_;
    std::vector<int> basis_;
    std::vector<Rational> row_sign_;
    std::vector<int> orig_row_;
    std::vector<int> art_index_;
};

}  // namespace

LpOutcome solve(const LinearSystem& system) {
    system.check_shape();
    LpOutcome out;
    SimplexTableau tab(system);
    Vec cert;
    if (!tab.phase1(cert)) {
        out.status = LpStatus::Infeasible;
        out.certificate = std::move(cert);
        return out;
    }
    if (!system.objective) {
        out.status = LpStatus::Feasible;
        out.witness = tab.solution();
        return out;
    }
    Vec ray;
    if (!tab.phase2(ray)) {
        out.status = LpStatus::Unbounded;
        out.witness = tab.solution();
        out.ray = std::move(ray);
        return out;
    }
    out.status = LpStatus::Optimal;
    out.witness = tab.solution();
    out.objective_value = dot(*system.objective, out.witness);
    return out;
}

bool witness_satisfies(const LinearSystem& system, const Vec& x) {
    if (static_cast<int>(x.size()) != system.num_vars) return false;
    for (int i = 0; i < system.num_vars; ++i)
        if (system.var_nonneg(i) && x[i] < 0) return false;
    for (std::size_t r = 0; r < system.eq_rows.size(); ++r)
        if (dot(system.eq_rows[r], x) != system.eq_rhs[r]) return false;
    for (std::size_t r = 0; r < system.ge_rows.size(); ++r)
        if (dot(system.ge_rows[r], x) < system.ge_rhs[r]) return false;
    return true;
}

bool certificate_refutes(const LinearSystem& system, const Vec& mult) {
    std::size_t ne = system.eq_rows.size(), ng = system.ge_rows.size();
    if (mult.size() != ne + ng) return false;
    for (std::size_t r = 0; r < ng; ++r)
        if (mult[ne + r] < 0) return false;
    Vec combined(system.num_vars, Rational(0));
    Rational rhs = 0;
    for (std::size_t r = 0; r < ne; ++r) {
        combined = combined + mult[r] * system.eq_rows[r];
        rhs += mult[r] * system.eq_rhs[r];
    }
    for (std::size_t r = 0; r < ng; ++r) {
        combined = combined + mult[ne + r] * system.ge_rows[r];
        rhs += mult[ne + r] * system.ge_rhs[r];
    }
    // Combination bounds a nonnegative expression above by something that
    // must be > 0 for a contradiction: coeffs <= 0 on x >= 0, 0 on free x.
    for (int i = 0; i < system.num_vars; ++i) {
        if (system.var_nonneg(i)) {
            if (combined[i] > 0) return false;
        } else {
            if (combined[i] != 0) return false;
        }
    }
    return rhs > 0;
}

ConeMembership cone_member(const Mat& generators, const Vec& target) {
    const int dim = static_cast<int>(target.size());
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("cone_member: dimension mismatch");

    ConeMembership res;
    if (generators.empty()) {
        if (is_zero(target)) {
            res.member = true;
            return res;
        }
        res.member = false;
        res.certificate = target;
        return res;
    }

    LinearSystem sys;
    sys.num_vars = static_cast<int>(generators.size());
    sys.eq_rows.assign(dim, Vec(sys.num_vars));
    sys.eq_rhs = target;
    for (int k = 0; k < dim; ++k)
        for (std::size_t g = 0; g < generators.size(); ++g)
            sys.eq_rows[k][g] = generators[g][k];

    LpOutcome out = solve(sys);
    if (out.status == LpStatus::Feasible) {
        res.member = true;
        res.coefficients = out.witness;
        Vec realized = zero_vec(dim);
        for (std::size_t g = 0; g < generators.size(); ++g)
            realized = realized + res.coefficients[g] * generators[g];
        if (realized != target) throw std::logic_error("cone_member: witness does not reproduce target");
        return res;
    }
    res.member = false;
    res.certificate = out.certificate;  // lives in the target space
    for (const auto& g : generators)
        if (dot(res.certificate, g) > 0) throw std::logic_error("cone_member: bad certificate vs generator");
    if (dot(res.certificate, target) <= 0) throw std::logic_error("cone_member: bad certificate vs target");
    return res;
}

namespace {

int rank_of(Mat rows) {
    if (rows.empty()) return 0;
    int n = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (int j = col; j < n; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool ray_is_extreme(const Vec& ray, const Mat& active_rows, int n) {
    if (is_zero(ray)) return false;
    Mat rows = active_rows;
    for (int i = 0; i < n; ++i)
        if (ray[i] == 0) rows.push_back(unit(n, i));
    return rank_of(std::move(rows)) == n - 1;
}

}  // namespace

Mat extreme_rays(const Mat& M, int num_vars) {
    if (num_vars > 64)
        throw DeskScaleError("extreme_rays: desk-scale exceeded (" + std::to_string(num_vars) +
                             " > 64 variables)");
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != num_vars)
            throw std::invalid_argument("extreme_rays: row width mismatch");
    if (num_vars == 0) return {};

    auto vec_less = [](const Vec& a, const Vec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };

    Mat rays;
    for (int i = 0; i < num_vars; ++i) rays.push_back(unit(num_vars, i));

    Mat processed;
    for (const auto& m : M) {
        Mat keep, pos, neg;
        Vec spos, sneg;
        for (auto& r : rays) {
            Rational s = dot(m, r);
            if (s == 0)
                keep.push_back(r);
            else if (s > 0) {
                pos.push_back(r);
                spos.push_back(s);
            } else {
                neg.push_back(r);
                sneg.push_back(s);
            }
        }
        for (std::size_t p = 0; p < pos.size(); ++p)
            for (std::size_t q = 0; q < neg.size(); ++q)
                keep.push_back(primitive(spos[p] * neg[q] + (-sneg[q]) * pos[p]));
        processed.push_back(m);

        std::set<Vec, decltype(vec_less)> seen(vec_less);
        rays.clear();
        for (auto& r : keep) {
            Vec pr = primitive(r);
            if (!seen.insert(pr).second) continue;
            if (ray_is_extreme(pr, processed, num_vars)) rays.push_back(std::move(pr));
        }
    }
    return rays;
}

}  // namespace conelab
