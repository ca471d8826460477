#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "klein/common.hpp"
#include "klein/finite_field.hpp"

namespace klein {

/// A point of P_n(F_q): homogeneous coordinates normalized so the first
/// nonzero coordinate is 1.
struct ProjPoint {
    std::vector<int> coords;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// The full point set of P_n(F_q), indexed. Point ids are positions in the
/// lexicographic ordering of canonical coordinate vectors, so they are
/// identical across runs.
class ProjSpace {
public:
    static constexpr int default_point_cap = 1000;

    static ProjSpace enumerate(const Field& field, int n, int point_cap = default_point_cap) {
        detail::require(n >= 0, "projective dimension must be >= 0");
        const std::uint64_t q = static_cast<std::uint64_t>(field.order());
        std::uint64_t vec_count = 1;
        for (int i = 0; i <= n; ++i) vec_count *= q;
        const std::uint64_t expected = (vec_count - 1) / (q - 1);
        if (expected > static_cast<std::uint64_t>(point_cap))
            throw cap_exceeded("projective point count exceeds cap", point_cap, expected);

        ProjSpace s;
        s.field_ = field;
        s.n_ = n;
        s.id_by_rank_.assign(vec_count, -1);
        // Ascending rank order is lexicographic order of coordinate tuples
        // with coords[0] compared first; canonical representatives are kept
        // in the order they appear.
        for (std::uint64_t r = 1; r < vec_count; ++r) {
            std::vector<int> v = s.vector_of_rank(r);
            int first = 0;
            while (first <= n && v[first] == 0) ++first;
            if (v[first] != 1) continue; // not canonical
            s.id_by_rank_[r] = static_cast<int>(s.points_.size());
            s.points_.push_back(ProjPoint{std::move(v)});
        }
        detail::ensure(s.points_.size() == expected, "projective point count mismatch");
        return s;
    }

    const Field& field() const { return field_; }
    int dim() const { return n_; }
    int size() const { return static_cast<int>(points_.size()); }
    const ProjPoint& point(int id) const { return points_[check_id(id)]; }

    std::string describe() const {
        return "P_" + std::to_string(n_) + "(F_" + std::to_string(field_.order()) + ")";
    }

    /// Canonical representative of a nonzero coordinate vector.
    std::vector<int> normalize(std::vector<int> v) const {
        detail::require(static_cast<int>(v.size()) == n_ + 1, "coordinate vector has wrong length");
        int first = -1;
        for (int i = 0; i <= n_; ++i)
            if (v[i] != 0) {
                first = i;
                break;
            }
        detail::require(first >= 0, "zero vector has no projective point");
        const int c = field_.inv(v[first]);
        for (int i = first; i <= n_; ++i) v[i] = field_.mul(c, v[i]);
        return v;
    }

    /// Point id of any nonzero coordinate vector (normalizes first).
    int id_of(const std::vector<int>& v) const {
        const int id = id_by_rank_[rank_of(normalize(v))];
        detail::ensure(id >= 0, "canonical vector missing from index");
        return id;
    }

    /// True iff the 3x(n+1) coordinate matrix of three distinct points has
    /// rank <= 2, by exact Gaussian elimination.
    bool collinear_rank(int p1, int p2, int p3) const {
        detail::require(p1 != p2 && p1 != p3 && p2 != p3, "collinearity requires distinct points");
        std::vector<std::vector<int>> rows = {point(p1).coords, point(p2).coords, point(p3).coords};
        return matrix_rank(rows) <= 2;
    }

    /// All points in the span of two distinct points, sorted by id.
    /// Always has q+1 members.
    std::vector<int> line_through(int p1, int p2) const {
        detail::require(p1 != p2, "a line needs two distinct points");
        const auto& a = point(p1).coords;
        const auto& b = point(p2).coords;
        std::vector<int> ids;
        ids.push_back(id_of(b));
        for (int mu = 0; mu < field_.order(); ++mu) {
            std::vector<int> v(n_ + 1);
            for (int i = 0; i <= n_; ++i) v[i] = field_.add(a[i], field_.mul(mu, b[i]));
            ids.push_back(id_of(v));
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        detail::ensure(static_cast<int>(ids.size()) == field_.order() + 1, "line has wrong cardinality");
        return ids;
    }

    /// Rank of a small matrix over the field, by exact elimination.
    int matrix_rank(std::vector<std::vector<int>> rows) const {
        const int m = static_cast<int>(rows.size());
        const int w = m == 0 ? 0 : static_cast<int>(rows[0].size());
        int rank = 0;
        for (int col = 0; col < w && rank < m; ++col) {
            int pivot = -1;
            for (int r = rank; r < m; ++r)
                if (rows[r][col] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(rows[rank], rows[pivot]);
            const int inv = field_.inv(rows[rank][col]);
            for (int c = col; c < w; ++c) rows[rank][c] = field_.mul(inv, rows[rank][c]);
            for (int r = 0; r < m; ++r) {
                if (r == rank || rows[r][col] == 0) continue;
                const int f = rows[r][col];
                for (int c = col; c < w; ++c)
                    rows[r][c] = field_.sub(rows[r][c], field_.mul(f, rows[rank][c]));
            }
            ++rank;
        }
        return rank;
    }

private:
    ProjSpace() : field_(Field::make(2, 1)) {}

    int check_id(int id) const {
        detail::require(id >= 0 && id < size(), "point id out of range");
        return id;
    }

    std::uint64_t rank_of(const std::vector<int>& v) const {
        const std::uint64_t q = static_cast<std::uint64_t>(field_.order());
        std::uint64_t r = 0;
        for (int i = 0; i <= n_; ++i) r = r * q + static_cast<std::uint64_t>(v[i]);
        return r;
    }

    std::vector<int> vector_of_rank(std::uint64_t r) const {
        const std::uint64_t q = static_cast<std::uint64_t>(field_.order());
        std::vector<int> v(n_ + 1);
        for (int i = n_; i >= 0; --i) {
            v[i] = static_cast<int>(r % q);
            r /= q;
        }
        return v;
    }

    Field field_;
    int n_ = 0;
    std::vector<ProjPoint> points_;
    std::vector<int> id_by_rank_;
};

/// The affine chart over the hyperplane at infinity x_0 = 0: the q^n points
/// with x_0 = 1, each identified with its coordinate vector in F_q^n.
class AffinePatch {
public:
    static AffinePatch of(const ProjSpace& space) {
        detail::require(space.dim() >= 1, "affine patch needs dimension >= 1");
        AffinePatch p(space);
        for (int id = 0; id < space.size(); ++id) {
            if (space.point(id).coords[0] == 0)
                p.infinity_ids_.push_back(id);
            else
                p.affine_ids_.push_back(id);
        }
        p.pos_.assign(space.size(), -1);
        for (std::size_t i = 0; i < p.affine_ids_.size(); ++i)
            p.pos_[p.affine_ids_[i]] = static_cast<int>(i);
        std::uint64_t qn = 1;
        for (int i = 0; i < space.dim(); ++i) qn *= static_cast<std::uint64_t>(space.field().order());
        detail::ensure(p.affine_ids_.size() == qn, "affine point count mismatch");
        detail::ensure(p.affine_ids_.size() + p.infinity_ids_.size() ==
                           static_cast<std::size_t>(space.size()),
                       "affine/infinity partition not exact");
        return p;
    }

    const ProjSpace& space() const { return space_; }
    const std::vector<int>& affine_ids() const { return affine_ids_; }
    const std::vector<int>& infinity_ids() const { return infinity_ids_; }
    int affine_count() const { return static_cast<int>(affine_ids_.size()); }

    bool is_affine(int point_id) const { return pos_[point_id] >= 0; }

    /// Position of a point inside the affine chart, -1 for points at infinity.
    int position_of(int point_id) const { return pos_[point_id]; }

    /// Affine coordinates (x_1..x_n) of a chart point.
    std::vector<int> affine_coords(int point_id) const {
        detail::require(is_affine(point_id), "point lies at infinity");
        const auto& c = space_.point(point_id).coords;
        return std::vector<int>(c.begin() + 1, c.end());
    }

    /// Point id of the chart point with affine coordinates v in F_q^n.
    int point_for(const std::vector<int>& v) const {
        detail::require(static_cast<int>(v.size()) == space_.dim(), "affine vector has wrong length");
        std::vector<int> h(space_.dim() + 1);
        h[0] = 1;
        std::copy(v.begin(), v.end(), h.begin() + 1);
        return space_.id_of(h);
    }

private:
    explicit AffinePatch(const ProjSpace& s) : space_(s) {}

    ProjSpace space_;
    std::vector<int> affine_ids_;
    std::vector<int> infinity_ids_;
    std::vector<int> pos_;
};

} // namespace klein
