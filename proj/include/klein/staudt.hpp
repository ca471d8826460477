#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "klein/common.hpp"
#include "klein/finite_field.hpp"
#include "klein/perm_group.hpp"
#include "klein/projective_space.hpp"

namespace klein {

/// Square matrix over a finite field, row-major element indices.
struct Matrix {
    int dim = 0;
    std::vector<int> a;

    static Matrix identity(int dim) {
        Matrix m{dim, std::vector<int>(static_cast<std::size_t>(dim) * dim, 0)};
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }

    int& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
    int at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y) {
    detail::require(x.dim == y.dim, "matrix dimension mismatch");
    Matrix z{x.dim, std::vector<int>(x.a.size(), 0)};
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) {
            int s = 0;
            for (int k = 0; k < x.dim; ++k) s = f.add(s, f.mul(x.at(i, k), y.at(k, j)));
            z.at(i, j) = s;
        }
    return z;
}

inline std::vector<int> mat_apply(const Field& f, const Matrix& m, const std::vector<int>& v) {
    detail::require(static_cast<int>(v.size()) == m.dim, "vector length mismatch");
    std::vector<int> w(v.size(), 0);
    for (int i = 0; i < m.dim; ++i) {
        int s = 0;
        for (int j = 0; j < m.dim; ++j) s = f.add(s, f.mul(m.at(i, j), v[j]));
        w[i] = s;
    }
    return w;
}

/// Determinant by exact Gaussian elimination.
inline int mat_det(const Field& f, Matrix m) {
    int det = 1;
    for (int col = 0; col < m.dim; ++col) {
        int pivot = -1;
        for (int r = col; r < m.dim; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int c = 0; c < m.dim; ++c) std::swap(m.at(col, c), m.at(pivot, c));
            det = f.neg(det);
        }
        det = f.mul(det, m.at(col, col));
        const int inv = f.inv(m.at(col, col));
        for (int r = col + 1; r < m.dim; ++r) {
            if (m.at(r, col) == 0) continue;
            const int factor = f.mul(inv, m.at(r, col));
            for (int c = col; c < m.dim; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
        }
    }
    return det;
}

/// Solve M x = b over the field; empty optional when M is singular.
inline std::optional<std::vector<int>> mat_solve(const Field& f, Matrix m, std::vector<int> b) {
    const int n = m.dim;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(col, c), m.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const int inv = f.inv(m.at(col, col));
        for (int c = col; c < n; ++c) m.at(col, c) = f.mul(inv, m.at(col, c));
        b[col] = f.mul(inv, b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col) == 0) continue;
            const int factor = m.at(r, col);
            for (int c = col; c < n; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
            b[r] = f.sub(b[r], f.mul(factor, b[col]));
        }
    }
    return b;
}

/// Apply a field automorphism to every entry.
inline Matrix mat_entrywise(const Field& f, const FieldAut& h, Matrix m) {
    for (int& x : m.a) x = f.apply(h, x);
    return m;
}

/// Invertible matrix paired with a field automorphism. Acts on vectors as
/// v -> A * h(v), the automorphism applied entrywise first.
struct SemilinearMap {
    Matrix A;
    FieldAut h;
};

/// (f1 . f2)(v) = A1 * h1(A2) * (h1 h2)(v); the automorphism part composes
/// and the second matrix is twisted by the first automorphism.
inline SemilinearMap compose_semilinear(const Field& f, const SemilinearMap& f1,
                                        const SemilinearMap& f2) {
    return SemilinearMap{mat_mul(f, f1.A, mat_entrywise(f, f1.h, f2.A)), f.compose(f1.h, f2.h)};
}

/// The induced permutation of the point set: id i maps to the id of the
/// normalization of A * h(coords(i)).
inline Permutation projectivize(const ProjSpace& space, const SemilinearMap& f) {
    const Field& k = space.field();
    detail::require(f.A.dim == space.dim() + 1, "matrix size must be n+1");
    detail::require(mat_det(k, f.A) != 0, "singular matrix cannot be projectivized");
    std::vector<int> images(static_cast<std::size_t>(space.size()));
    for (int id = 0; id < space.size(); ++id) {
        std::vector<int> v = space.point(id).coords;
        for (int& x : v) x = k.apply(f.h, x);
        images[static_cast<std::size_t>(id)] = space.id_of(mat_apply(k, f.A, v));
    }
    return Permutation(std::move(images));
}

inline Permutation frobenius_permutation(const ProjSpace& space, const FieldAut& h) {
    return projectivize(space, SemilinearMap{Matrix::identity(space.dim() + 1), h});
}

namespace detail {

/// Shared enumeration behind pgl_group / pgammal_group: projectivizes every
/// (invertible matrix, automorphism) pair and dedupes the permutations.
/// Returns the deduped set plus the number with identity automorphism.
inline std::pair<std::set<std::vector<int>>, std::size_t>
enumerate_projectivities(const ProjSpace& space, const std::vector<FieldAut>& auts,
                         std::uint64_t matrix_cap, std::uint64_t order_cap) {
    const Field& f = space.field();
    const int d = space.dim() + 1;
    const std::uint64_t q = static_cast<std::uint64_t>(f.order());
    std::uint64_t total = 1;
    for (int i = 0; i < d * d; ++i) {
        total *= q;
        if (total > matrix_cap)
            throw cap_exceeded("matrix enumeration exceeds cap", matrix_cap, total);
    }

    std::set<std::vector<int>> perms;
    std::size_t identity_aut_count = 0;
    Matrix m{d, std::vector<int>(static_cast<std::size_t>(d) * d, 0)};
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t tt = t;
        for (int i = d * d - 1; i >= 0; --i) {
            m.a[static_cast<std::size_t>(i)] = static_cast<int>(tt % q);
            tt /= q;
        }
        if (mat_det(f, m) == 0) continue;
        for (const auto& h : auts) {
            auto im = projectivize(space, SemilinearMap{m, h}).images();
            const bool fresh = perms.insert(std::move(im)).second;
            if (fresh && perms.size() > order_cap)
                throw cap_exceeded("group order exceeds enumeration cap", order_cap, perms.size());
            if (fresh && h.j == 0) ++identity_aut_count;
        }
    }
    return {std::move(perms), identity_aut_count};
}

inline PermGroup group_from_image_set(const std::set<std::vector<int>>& perms) {
    std::vector<Permutation> elems;
    elems.reserve(perms.size());
    for (const auto& im : perms) elems.push_back(Permutation(im));
    return PermGroup::from_elements(std::move(elems));
}

} // namespace detail

/// The group of projectivized invertible matrices, as permutations of the
/// point set.
inline PermGroup pgl_group(const ProjSpace& space, std::uint64_t matrix_cap = 10000000,
                           std::uint64_t order_cap = PermGroup::default_order_cap) {
    auto [perms, with_id_aut] =
        detail::enumerate_projectivities(space, {FieldAut{0}}, matrix_cap, order_cap);
    detail::ensure(with_id_aut == perms.size(), "pgl dedupe miscounted");

    // kernel check: each permutation must be hit by exactly q-1 matrices
    const Field& f = space.field();
    const int d = space.dim() + 1;
    std::uint64_t q = static_cast<std::uint64_t>(f.order()), gl = 1, qi = 1, qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    for (int i = 0; i < d; ++i) {
        gl *= qd - qi;
        qi *= q;
    }
    detail::ensure(perms.size() * (q - 1) == gl,
                   "projectivization kernel is not exactly the scalar matrices");
    return detail::group_from_image_set(perms);
}

/// The group of all projectivized semilinear bijections (every invertible
/// matrix paired with every field automorphism).
inline PermGroup pgammal_group(const ProjSpace& space, std::uint64_t matrix_cap = 10000000,
                               std::uint64_t order_cap = PermGroup::default_order_cap) {
    auto [perms, with_id_aut] =
        detail::enumerate_projectivities(space, space.field().automorphisms(), matrix_cap,
                                         order_cap);
    detail::ensure(perms.size() == with_id_aut * static_cast<std::size_t>(space.field().k()),
                   "semilinear group order is not |PGL| * k");
    return detail::group_from_image_set(perms);
}

/// Translation by mu on the affine line: P_lambda -> P_{lambda+mu}, fixing
/// the point at infinity.
inline Permutation line_translation(const AffinePatch& patch, int mu) {
    const ProjSpace& s = patch.space();
    detail::require(s.dim() == 1, "translations are built on the projective line");
    const Field& f = s.field();
    std::vector<int> images(static_cast<std::size_t>(s.size()));
    images[static_cast<std::size_t>(patch.infinity_ids()[0])] = patch.infinity_ids()[0];
    for (int id : patch.affine_ids()) {
        const int lambda = patch.affine_coords(id)[0];
        images[static_cast<std::size_t>(id)] = patch.point_for({f.add(lambda, mu)});
    }
    return Permutation(std::move(images));
}

/// Homothety with center P_0 and ratio mu != 0: P_lambda -> P_{lambda*mu},
/// fixing P_0 and the point at infinity.
inline Permutation line_homothety(const AffinePatch& patch, int mu) {
    const ProjSpace& s = patch.space();
    detail::require(s.dim() == 1, "homotheties are built on the projective line");
    detail::require(mu != 0, "homothety ratio must be nonzero");
    const Field& f = s.field();
    std::vector<int> images(static_cast<std::size_t>(s.size()));
    images[static_cast<std::size_t>(patch.infinity_ids()[0])] = patch.infinity_ids()[0];
    for (int id : patch.affine_ids()) {
        const int lambda = patch.affine_coords(id)[0];
        images[static_cast<std::size_t>(id)] = patch.point_for({f.mul(lambda, mu)});
    }
    return Permutation(std::move(images));
}

/// Matrix sending the standard frame (e_0..e_n, all-ones) to the given
/// image points, determined up to one global scalar: column i is the
/// representative of images[i] scaled so the columns sum to the
/// representative of the unit-point image. Empty when the images are not a
/// frame (dependent points or vanishing scale).
inline std::optional<Matrix> matrix_from_frame_images(const ProjSpace& space,
                                                      const std::vector<int>& images) {
    const Field& f = space.field();
    const int d = space.dim() + 1;
    detail::require(static_cast<int>(images.size()) == d + 1, "a frame has n+2 points");
    Matrix cols{d, std::vector<int>(static_cast<std::size_t>(d) * d, 0)};
    for (int i = 0; i < d; ++i) {
        const auto& rep = space.point(images[static_cast<std::size_t>(i)]).coords;
        for (int r = 0; r < d; ++r) cols.at(r, i) = rep[static_cast<std::size_t>(r)];
    }
    auto scale = mat_solve(f, cols, space.point(images[static_cast<std::size_t>(d)]).coords);
    if (!scale) return std::nullopt;
    for (int i = 0; i < d; ++i) {
        if ((*scale)[static_cast<std::size_t>(i)] == 0) return std::nullopt;
        for (int r = 0; r < d; ++r)
            cols.at(r, i) = f.mul(cols.at(r, i), (*scale)[static_cast<std::size_t>(i)]);
    }
    return cols;
}

/// Point ids of the standard frame: coordinate points e_0..e_n then the
/// all-ones point.
inline std::vector<int> standard_frame(const ProjSpace& space) {
    const int d = space.dim() + 1;
    std::vector<int> frame;
    for (int i = 0; i < d; ++i) {
        std::vector<int> e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(i)] = 1;
        frame.push_back(space.id_of(e));
    }
    frame.push_back(space.id_of(std::vector<int>(static_cast<std::size_t>(d), 1)));
    return frame;
}

/// The homography taking the standard line reference (P_0, P_inf, P_1) to
/// the given one.
inline Permutation reference_homography(const ProjSpace& space, int origin, int infinity,
                                        int unit) {
    detail::require(space.dim() == 1, "line references need dimension 1");
    detail::require(origin != infinity && origin != unit && infinity != unit,
                    "reference points must be distinct");
    auto m = matrix_from_frame_images(space, {origin, infinity, unit});
    detail::ensure(m.has_value(), "three distinct line points always form a frame");
    return projectivize(space, SemilinearMap{*m, FieldAut{0}});
}

/// Reads the scalar bijection induced by a line permutation: fix the
/// reference (P_0, P_inf, P_1), let the primed reference be its image, and
/// define h(lambda) as the primed affine coordinate of phi(P_lambda).
/// Always a bijection with h(0) = 0 and h(1) = 1; whether it is a field
/// automorphism is checked separately.
inline std::vector<int> extract_field_aut(const ProjSpace& space, const Permutation& phi) {
    detail::require(space.dim() == 1, "scalar extraction works on the projective line");
    detail::require(phi.degree() == space.size(), "permutation degree mismatch");
    const Field& f = space.field();
    const AffinePatch patch = AffinePatch::of(space);
    const int p0 = patch.point_for({0});
    const int pinf = patch.infinity_ids()[0];
    const int p1 = patch.point_for({1});
    const Permutation psi = reference_homography(space, phi(p0), phi(pinf), phi(p1));
    const Permutation psi_inv = psi.inverse();
    std::vector<int> h(static_cast<std::size_t>(f.order()));
    for (int lambda = 0; lambda < f.order(); ++lambda)
        h[static_cast<std::size_t>(lambda)] =
            patch.affine_coords(psi_inv(phi(patch.point_for({lambda}))))[0];
    return h;
}

/// Outcome of checking an extracted scalar table against the field structure
/// and against conjugation transport of translations and homotheties.
struct ScalarActionCheck {
    bool additive = false;
    bool multiplicative = false;
    bool translation_conjugation = false;
    bool homothety_conjugation = false;

    bool all() const {
        return additive && multiplicative && translation_conjugation && homothety_conjugation;
    }
};

/// Checks, exhaustively over all scalars, that
///   phi tau_mu phi^-1  equals the primed translation by h(mu),
///   phi sigma_mu phi^-1 equals the primed homothety by h(mu),
/// and that h is additive and multiplicative. Primed maps are built with
/// respect to the image reference. Failures are reported flags, not errors.
inline ScalarActionCheck check_scalar_action(const ProjSpace& space, const Permutation& phi,
                                             const std::vector<int>& h) {
    detail::require(space.dim() == 1, "scalar action checks work on the projective line");
    const Field& f = space.field();
    detail::require(static_cast<int>(h.size()) == f.order(), "scalar table has wrong size");
    {
        std::vector<char> hit(h.size(), 0);
        for (int v : h) {
            detail::require(v >= 0 && v < f.order() && !hit[static_cast<std::size_t>(v)],
                            "scalar table must be a bijection");
            hit[static_cast<std::size_t>(v)] = 1;
        }
        detail::require(h[0] == 0 && h[1] == 1, "scalar table must fix 0 and 1");
    }

    const AffinePatch patch = AffinePatch::of(space);
    const int p0 = patch.point_for({0});
    const int pinf = patch.infinity_ids()[0];
    const int p1 = patch.point_for({1});
    const Permutation psi = reference_homography(space, phi(p0), phi(pinf), phi(p1));
    const Permutation psi_inv = psi.inverse();
    const Permutation phi_inv = phi.inverse();

    ScalarActionCheck out;
    out.additive = out.multiplicative = true;
    out.translation_conjugation = out.homothety_conjugation = true;
    for (int mu = 0; mu < f.order(); ++mu) {
        const auto hmu = h[static_cast<std::size_t>(mu)];
        const Permutation lhs_t = compose(compose(phi, line_translation(patch, mu)), phi_inv);
        const Permutation rhs_t =
            compose(compose(psi, line_translation(patch, hmu)), psi_inv);
        if (lhs_t != rhs_t) out.translation_conjugation = false;
        if (mu != 0) {
            const Permutation lhs_s = compose(compose(phi, line_homothety(patch, mu)), phi_inv);
            const Permutation rhs_s =
                compose(compose(psi, line_homothety(patch, hmu)), psi_inv);
            if (lhs_s != rhs_s) out.homothety_conjugation = false;
        }
        for (int lambda = 0; lambda < f.order(); ++lambda) {
            if (h[static_cast<std::size_t>(f.add(lambda, mu))] !=
                f.add(h[static_cast<std::size_t>(lambda)], hmu))
                out.additive = false;
            if (h[static_cast<std::size_t>(f.mul(lambda, mu))] !=
                f.mul(h[static_cast<std::size_t>(lambda)], hmu))
                out.multiplicative = false;
        }
    }
    return out;
}

/// Searches for a semilinear map projectivizing to phi. The matrix is
/// pinned, up to one global scalar, by the images of the standard frame;
/// each field automorphism is then tried as the twist. Empty optional means
/// phi is not a Staudt projectivity.
inline std::optional<SemilinearMap> decompose_staudt(const ProjSpace& space,
                                                     const Permutation& phi) {
    detail::require(phi.degree() == space.size(), "permutation degree mismatch");
    std::vector<int> frame = standard_frame(space);
    std::vector<int> images;
    images.reserve(frame.size());
    for (int p : frame) images.push_back(phi(p));
    auto m = matrix_from_frame_images(space, images);
    if (!m) return std::nullopt;
    for (const auto& h : space.field().automorphisms()) {
        SemilinearMap candidate{*m, h};
        if (projectivize(space, candidate) == phi) return candidate;
    }
    return std::nullopt;
}

/// Every line of the space, each a sorted id list, the whole census sorted.
inline std::vector<std::vector<int>> all_lines(const ProjSpace& space) {
    std::set<std::vector<int>> lines;
    for (int a = 0; a < space.size(); ++a)
        for (int b = a + 1; b < space.size(); ++b) lines.insert(space.line_through(a, b));
    return {lines.begin(), lines.end()};
}

/// True iff phi maps every line onto a line. Alignment is vacuous on the
/// projective line, so dimension >= 2 is required.
inline bool is_collineation(const ProjSpace& space, const Permutation& phi,
                            const std::vector<std::vector<int>>& lines) {
    detail::require(space.dim() >= 2, "alignment is vacuous in dimension < 2");
    detail::require(phi.degree() == space.size(), "permutation degree mismatch");
    for (const auto& line : lines) {
        std::vector<int> image;
        image.reserve(line.size());
        for (int p : line) image.push_back(phi(p));
        std::sort(image.begin(), image.end());
        if (!std::binary_search(lines.begin(), lines.end(), image)) return false;
    }
    return true;
}

inline bool is_collineation(const ProjSpace& space, const Permutation& phi) {
    return is_collineation(space, phi, all_lines(space));
}

/// All collineations of a projective plane over a prime field, enumerated by
/// frame images: a plane collineation is pinned by where it sends the
/// standard frame, because repeated line intersections starting from a frame
/// reach every point when q is prime. Each candidate extension is verified
/// line-by-line before being accepted.
inline std::vector<Permutation> all_collineations_by_frames(const ProjSpace& space) {
    detail::require(space.dim() == 2, "frame closure enumeration is implemented for planes");
    detail::require(space.field().k() == 1,
                    "frame closure reaches the whole plane only over prime fields");
    const auto lines = all_lines(space);
    const int m = space.size();

    // incidence: lines through each point, line index for each point pair
    std::vector<std::vector<int>> lines_of_point(static_cast<std::size_t>(m));
    std::map<std::pair<int, int>, int> line_of_pair;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        for (int p : lines[li]) lines_of_point[static_cast<std::size_t>(p)].push_back(static_cast<int>(li));
        for (std::size_t i = 0; i < lines[li].size(); ++i)
            for (std::size_t j = i + 1; j < lines[li].size(); ++j)
                line_of_pair[{lines[li][i], lines[li][j]}] = static_cast<int>(li);
    }
    auto line_index = [&](int a, int b) {
        return line_of_pair.at({std::min(a, b), std::max(a, b)});
    };
    auto meet = [&](int l1, int l2) {
        // two distinct plane lines meet in exactly one point
        std::vector<int> common;
        std::set_intersection(lines[static_cast<std::size_t>(l1)].begin(),
                              lines[static_cast<std::size_t>(l1)].end(),
                              lines[static_cast<std::size_t>(l2)].begin(),
                              lines[static_cast<std::size_t>(l2)].end(),
                              std::back_inserter(common));
        detail::ensure(common.size() == 1, "distinct plane lines must meet in one point");
        return common[0];
    };

    const std::vector<int> frame = standard_frame(space);
    auto in_general_position = [&](const std::vector<int>& pts) {
        for (std::size_t skip = 0; skip < pts.size(); ++skip) {
            std::vector<int> triple;
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (i != skip) triple.push_back(pts[i]);
            if (space.collinear_rank(triple[0], triple[1], triple[2])) return false;
        }
        return true;
    };

    std::vector<Permutation> found;
    std::vector<int> img(static_cast<std::size_t>(m));
    // ordered frame images, filtered to general position
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    if (!in_general_position({a, b, c, d})) continue;

                    std::fill(img.begin(), img.end(), -1);
                    img[static_cast<std::size_t>(frame[0])] = a;
                    img[static_cast<std::size_t>(frame[1])] = b;
                    img[static_cast<std::size_t>(frame[2])] = c;
                    img[static_cast<std::size_t>(frame[3])] = d;
                    int mapped = 4;
                    bool stuck = false;
                    while (mapped < m && !stuck) {
                        stuck = true;
                        for (int x = 0; x < m; ++x) {
                            if (img[static_cast<std::size_t>(x)] >= 0) continue;
                            // two determined lines through x pin its image
                            std::vector<int> image_lines;
                            for (int li : lines_of_point[static_cast<std::size_t>(x)]) {
                                int u = -1, v = -1;
                                for (int p : lines[static_cast<std::size_t>(li)]) {
                                    if (p == x || img[static_cast<std::size_t>(p)] < 0) continue;
                                    if (u < 0)
                                        u = p;
                                    else {
                                        v = p;
                                        break;
                                    }
                                }
                                if (v >= 0)
                                    image_lines.push_back(line_index(img[static_cast<std::size_t>(u)],
                                                                     img[static_cast<std::size_t>(v)]));
                            }
                            std::sort(image_lines.begin(), image_lines.end());
                            image_lines.erase(std::unique(image_lines.begin(), image_lines.end()),
                                              image_lines.end());
                            if (image_lines.size() < 2) continue;
                            img[static_cast<std::size_t>(x)] = meet(image_lines[0], image_lines[1]);
                            ++mapped;
                            stuck = false;
                        }
                    }
                    if (mapped < m) continue;
                    // accept only genuine bijections that preserve every line
                    std::vector<char> hit(static_cast<std::size_t>(m), 0);
                    bool bijection = true;
                    for (int v : img) {
                        if (hit[static_cast<std::size_t>(v)]) {
                            bijection = false;
                            break;
                        }
                        hit[static_cast<std::size_t>(v)] = 1;
                    }
                    if (!bijection) continue;
                    Permutation candidate(img);
                    if (is_collineation(space, candidate, lines)) found.push_back(std::move(candidate));
                }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

} // namespace klein
