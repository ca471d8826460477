#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <thread>
#include <unordered_set>
#include <vector>

#include "klein/common.hpp"

namespace klein {

/// A bijection of {0..m-1}, stored as its image array.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> hit(images_.size(), 0);
        for (int v : images_) {
            detail::require(v >= 0 && v < static_cast<int>(images_.size()) && !hit[v],
                            "image array is not a bijection");
            hit[v] = 1;
        }
    }

    static Permutation identity(int degree) {
        std::vector<int> im(degree);
        for (int i = 0; i < degree; ++i) im[i] = i;
        return Permutation(unchecked{}, std::move(im));
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
        return Permutation(unchecked{}, std::move(inv));
    }

    /// compose(a, b): apply b first, then a.
    friend Permutation compose(const Permutation& a, const Permutation& b);

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct unchecked {};
    Permutation(unchecked, std::vector<int> images) : images_(std::move(images)) {}

    std::vector<int> images_;
};

inline Permutation compose(const Permutation& a, const Permutation& b) {
    detail::require(a.degree() == b.degree(), "degree mismatch in composition");
    std::vector<int> im(a.images_.size());
    for (int i = 0; i < a.degree(); ++i) im[i] = a.images_[b.images_[i]];
    return Permutation(Permutation::unchecked{}, std::move(im));
}

inline Permutation conjugate(const Permutation& g, const Permutation& h, const Permutation& g_inv) {
    return compose(compose(g, h), g_inv); // g h g^-1
}

namespace detail {

struct ImageHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace detail

inline std::uint64_t factorial(int m) {
    detail::require(m >= 0 && m <= 20, "factorial argument out of uint64 range");
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// rank-th permutation of {0..degree-1} in lexicographic order.
inline Permutation nth_permutation(int degree, std::uint64_t rank) {
    std::vector<int> pool(degree);
    for (int i = 0; i < degree; ++i) pool[i] = i;
    std::vector<int> im;
    im.reserve(degree);
    for (int i = degree; i >= 1; --i) {
        const std::uint64_t f = factorial(i - 1);
        const auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        im.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation(std::move(im));
}

/// Lexicographic rank (Lehmer code) of a permutation.
inline std::uint64_t permutation_rank(const Permutation& p) {
    const int m = p.degree();
    std::uint64_t rank = 0;
    for (int i = 0; i < m; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < m; ++j)
            if (p(j) < p(i)) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(m - 1 - i);
    }
    return rank;
}

/// Visit image arrays of the permutations with lexicographic ranks in
/// [lo, hi). The visited vector is reused; copy it to keep it.
template <class Fn>
void for_each_permutation_range(int degree, std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    if (lo >= hi) return;
    std::vector<int> im = nth_permutation(degree, lo).images();
    for (std::uint64_t r = lo; r < hi; ++r) {
        fn(static_cast<const std::vector<int>&>(im));
        if (!std::next_permutation(im.begin(), im.end())) break;
    }
}

/// A finitely enumerated permutation group. Elements are stored sorted by
/// image array, so two groups are equal as sets iff their element lists are
/// equal.
class PermGroup {
public:
    static constexpr std::uint64_t default_order_cap = 1000000;

    /// Closure of the generators under composition, by breadth-first
    /// expansion with constant-time membership.
    static PermGroup generate(std::vector<Permutation> gens,
                              std::uint64_t order_cap = default_order_cap) {
        detail::require(!gens.empty(), "need at least one generator to fix the degree");
        const int degree = gens.front().degree();
        for (const auto& g : gens)
            detail::require(g.degree() == degree, "generators must share a degree");

        std::unordered_set<std::vector<int>, detail::ImageHash> seen;
        std::queue<std::vector<int>> todo;
        auto push = [&](std::vector<int> im) {
            if (seen.insert(im).second) {
                if (seen.size() > order_cap)
                    throw cap_exceeded("group order exceeds enumeration cap", order_cap, seen.size());
                todo.push(std::move(im));
            }
        };
        push(Permutation::identity(degree).images());
        for (const auto& g : gens) push(g.images());
        while (!todo.empty()) {
            const std::vector<int> cur = std::move(todo.front());
            todo.pop();
            for (const auto& g : gens) {
                std::vector<int> prod(cur.size());
                for (int i = 0; i < degree; ++i) prod[i] = g(cur[i]); // g after cur
                push(std::move(prod));
            }
        }

        PermGroup out;
        out.degree_ = degree;
        out.generators_ = std::move(gens);
        out.elements_.reserve(seen.size());
        for (const auto& im : seen) out.elements_.push_back(Permutation(im));
        std::sort(out.elements_.begin(), out.elements_.end());
        out.spot_check();
        return out;
    }

    /// Wrap an explicit element list. Recomputes a small generating set and
    /// verifies that its closure reproduces the list exactly, which proves
    /// the list is a subgroup.
    static PermGroup from_elements(std::vector<Permutation> elems) {
        detail::require(!elems.empty(), "a group needs at least the identity");
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        const int degree = elems.front().degree();

        std::vector<Permutation> gens;
        std::unordered_set<std::vector<int>, detail::ImageHash> closure;
        closure.insert(Permutation::identity(degree).images());
        for (const auto& e : elems) {
            if (closure.count(e.images())) continue;
            gens.push_back(e);
            // regrow the closure with the enlarged generating set
            closure.clear();
            std::queue<std::vector<int>> todo;
            closure.insert(Permutation::identity(degree).images());
            todo.push(Permutation::identity(degree).images());
            while (!todo.empty()) {
                const std::vector<int> cur = std::move(todo.front());
                todo.pop();
                for (const auto& g : gens) {
                    std::vector<int> prod(cur.size());
                    for (int i = 0; i < degree; ++i) prod[i] = g(cur[i]);
                    if (closure.insert(prod).second) {
                        detail::ensure(closure.size() <= elems.size(),
                                       "element list is not closed under composition");
                        todo.push(std::move(prod));
                    }
                }
            }
        }
        detail::ensure(closure.size() == elems.size(), "element list is not a subgroup");
        for (const auto& e : elems)
            detail::ensure(closure.count(e.images()) == 1, "element list is not a subgroup");

        PermGroup out;
        out.degree_ = degree;
        if (gens.empty()) gens.push_back(Permutation::identity(degree));
        out.generators_ = std::move(gens);
        out.elements_ = std::move(elems);
        return out;
    }

    int degree() const { return degree_; }
    std::uint64_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    bool contains(const Permutation& p) const {
        return std::binary_search(elements_.begin(), elements_.end(), p);
    }

    bool contains_images(const std::vector<int>& im) const {
        return std::binary_search(elements_.begin(), elements_.end(), im,
                                  [](const auto& a, const auto& b) {
                                      if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Permutation>)
                                          return a.images() < b;
                                      else
                                          return a < b.images();
                                  });
    }

    /// Same element set.
    friend bool operator==(const PermGroup& a, const PermGroup& b) {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    PermGroup() = default;

    void spot_check() const {
        detail::ensure(contains(Permutation::identity(degree_)), "identity missing from group");
        for (const auto& g : generators_)
            detail::ensure(contains(g.inverse()), "generator inverse missing from group");
        const std::size_t probe = std::min<std::size_t>(elements_.size(), 16);
        for (std::size_t i = 0; i < probe; ++i)
            for (std::size_t j = 0; j < probe; ++j)
                detail::ensure(contains(compose(elements_[i], elements_[j])),
                               "group not closed under composition");
    }

    int degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
};

/// True iff g H g^-1 = H. Checking generators suffices: conjugation by a
/// fixed g is an injective homomorphism, so it maps H into H exactly when it
/// maps every generator into H, and injectivity on the finite set H forces
/// equality.
inline bool normalizes(const Permutation& g, const PermGroup& H) {
    detail::require(g.degree() == H.degree(), "degree mismatch");
    detail::require(H.order() > 0, "group must be enumerated");
    const Permutation g_inv = g.inverse();
    for (const auto& h : H.generators())
        if (!H.contains(conjugate(g, h, g_inv))) return false;
    return true;
}

namespace detail {

/// Splits [0, total) into `jobs` contiguous chunks and runs worker(j, lo, hi)
/// on each; chunk results must be merged by the caller in chunk order.
template <class Worker>
void partitioned_scan(std::uint64_t total, int jobs, Worker&& worker) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || total < 2 * static_cast<std::uint64_t>(jobs)) {
        worker(0, 0, total);
        return;
    }
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
        const std::uint64_t lo = std::min(total, chunk * static_cast<std::uint64_t>(j));
        const std::uint64_t hi = std::min(total, lo + chunk);
        threads.emplace_back([&worker, j, lo, hi] { worker(j, lo, hi); });
    }
    for (auto& t : threads) t.join();
}

} // namespace detail

/// The normalizer of H inside the full symmetric group on H's points, by
/// exhaustive scan of all m! candidates in lexicographic order. The scan may
/// be partitioned across `jobs` workers; the merged result is identical to
/// the sequential one.
inline PermGroup normalizer_brute(const PermGroup& H, std::uint64_t factorial_cap = 4000000,
                                  int jobs = 1) {
    const int m = H.degree();
    const std::uint64_t total = factorial(m);
    if (total > factorial_cap)
        throw cap_exceeded("m! exceeds the factorial scan cap", factorial_cap, total);

    jobs = std::max(1, jobs);
    std::vector<std::vector<Permutation>> found(static_cast<std::size_t>(jobs) + 1);
    detail::partitioned_scan(total, jobs, [&](int j, std::uint64_t lo, std::uint64_t hi) {
        auto& bucket = found[static_cast<std::size_t>(j)];
        for_each_permutation_range(m, lo, hi, [&](const std::vector<int>& im) {
            Permutation g(im);
            if (normalizes(g, H)) bucket.push_back(std::move(g));
        });
    });

    std::vector<Permutation> members;
    for (auto& bucket : found)
        members.insert(members.end(), bucket.begin(), bucket.end());
    PermGroup N = PermGroup::from_elements(std::move(members));
    detail::ensure(N.order() % H.order() == 0, "normalizer order not a multiple of |H|");
    for (const auto& h : H.elements())
        detail::ensure(N.contains(h), "normalizer does not contain the group itself");
    return N;
}

/// All distinct conjugates g H g^-1 with g ranging over the full symmetric
/// group, deduplicated by sorted element list, labeled in first-encounter
/// order of the lexicographic scan. Supports the same partitioning contract
/// as normalizer_brute.
inline std::vector<PermGroup> conjugates_of(const PermGroup& H,
                                            std::uint64_t factorial_cap = 4000000, int jobs = 1) {
    const int m = H.degree();
    const std::uint64_t total = factorial(m);
    if (total > factorial_cap)
        throw cap_exceeded("m! exceeds the factorial scan cap", factorial_cap, total);

    using Fingerprint = std::vector<std::vector<int>>;
    jobs = std::max(1, jobs);
    std::vector<std::map<Fingerprint, std::uint64_t>> partial(static_cast<std::size_t>(jobs) + 1);
    detail::partitioned_scan(total, jobs, [&](int j, std::uint64_t lo, std::uint64_t hi) {
        auto& first_rank = partial[static_cast<std::size_t>(j)];
        std::uint64_t r = lo;
        for_each_permutation_range(m, lo, hi, [&](const std::vector<int>& im) {
            const Permutation g(im);
            const Permutation g_inv = g.inverse();
            Fingerprint fp;
            fp.reserve(H.order());
            for (const auto& h : H.elements()) fp.push_back(conjugate(g, h, g_inv).images());
            std::sort(fp.begin(), fp.end());
            first_rank.emplace(std::move(fp), r); // keeps the earliest rank
            ++r;
        });
    });

    std::map<Fingerprint, std::uint64_t> merged;
    for (auto& part : partial)
        for (auto& [fp, r] : part) {
            auto [it, fresh] = merged.emplace(fp, r);
            if (!fresh) it->second = std::min(it->second, r);
        }
    std::vector<std::pair<std::uint64_t, const Fingerprint*>> order;
    order.reserve(merged.size());
    for (const auto& [fp, r] : merged) order.emplace_back(r, &fp);
    std::sort(order.begin(), order.end());

    std::vector<PermGroup> out;
    out.reserve(order.size());
    for (const auto& [r, fp] : order) {
        std::vector<Permutation> elems;
        elems.reserve(fp->size());
        for (const auto& im : *fp) elems.push_back(Permutation(im));
        out.push_back(PermGroup::from_elements(std::move(elems)));
    }
    return out;
}

/// Cycle lengths of a permutation, sorted descending.
inline std::vector<int> cycle_type(const Permutation& p) {
    std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
    std::vector<int> type;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            j = p(j);
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

/// Orbit of `moving` under the subgroup of G fixing every point of `fixed`
/// pointwise. Contains `moving` itself.
inline std::set<int> stabilizer_orbit(const PermGroup& G, const std::vector<int>& fixed,
                                      int moving) {
    std::set<int> orbit;
    for (const auto& g : G.elements()) {
        bool fixes = true;
        for (int p : fixed)
            if (g(p) != p) {
                fixes = false;
                break;
            }
        if (fixes) orbit.insert(g(moving));
    }
    return orbit;
}

} // namespace klein
