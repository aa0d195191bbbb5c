#include "scatterforge/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <string>

#include "scatterforge/errors.hpp"

namespace scatterforge::kernels {

void configure_threads_from_env() {
    const char* env = std::getenv("SCATTERFORGE_THREADS");
    if (env == nullptr) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) omp_set_num_threads(static_cast<int>(std::min<long>(n, INT_MAX)));
}

FqRank::FqRank(const Tower& T, unsigned width)
    : q_(T.q()),
      m_(T.m()),
      width_(width),
      bits_(T.q() == 2 && width * T.m() <= 64),
      ech_(T.fq(), std::size_t{width} * T.m()),
      buf_(std::size_t{width} * T.m()) {}

unsigned FqRank::operator()(std::span<const Elem> flat) {
    ech_.clear();
    const std::size_t vectors = flat.size() / width_;
    const std::size_t full = std::size_t{width_} * m_;
    for (std::size_t r = 0; r < vectors; ++r) {
        const auto v = flat.subspan(r * width_, width_);
        if (bits_) {
            std::uint64_t word = 0;
            for (unsigned j = 0; j < width_; ++j) word |= std::uint64_t{v[j].v} << (j * m_);
            ech_.insert_bits(word);
        } else {
            for (unsigned j = 0; j < width_; ++j) {
                std::uint32_t x = v[j].v;
                for (unsigned i = 0; i < m_; ++i) {
                    buf_[j * m_ + i] = Elem{x % q_};
                    x /= q_;
                }
            }
            ech_.insert(buf_);
        }
        if (ech_.rank() == full) break;
    }
    return static_cast<unsigned>(ech_.rank());
}

namespace {

std::uint64_t vector_count(const FqSubspace& U) {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < U.dim(); ++i) total *= U.tower().q();
    return total;
}

}  // namespace

std::vector<std::uint32_t> point_multiplicities(const FqSubspace& U, Exec exec) {
    const ProjectiveSpace PS(U.tower().fqm(), U.ambient_k());
    std::vector<std::uint32_t> counts(PS.size(), 0);
    if (exec == Exec::serial) {
        U.for_each_vector([&](std::span<const Elem> v) {
            if (std::any_of(v.begin(), v.end(), [](Elem x) { return x.v != 0; })) ++counts[PS.rank_of(v)];
        });
        return counts;
    }
    const auto total = static_cast<std::int64_t>(vector_count(U));
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 1; idx < total; ++idx) {
        const Vec v = U.vector_at(static_cast<std::uint64_t>(idx));
        std::atomic_ref<std::uint32_t>(counts[PS.rank_of(v)]).fetch_add(1, std::memory_order_relaxed);
    }
    return counts;
}

namespace {

// Runs body(rank, scratch) over every rank of PS, serially or with one scratch per thread.
template <class Scratch, class MakeScratch, class Body>
void for_each_rank(std::uint64_t size, Exec exec, MakeScratch make, Body body) {
    if (exec == Exec::serial) {
        Scratch scratch = make();
        for (std::uint64_t r = 0; r < size; ++r) body(r, scratch);
        return;
    }
    const auto total = static_cast<std::int64_t>(size);
#pragma omp parallel
    {
        Scratch scratch = make();
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < total; ++r) body(static_cast<std::uint64_t>(r), scratch);
    }
}

struct RankScratch {
    FqRank rank;
    Vec point;
    std::vector<Elem> images;
};

}  // namespace

std::vector<std::uint8_t> point_weights(const FqSubspace& U, Exec exec) {
    const Tower& T = U.tower();
    const Field& F = T.fqm();
    const unsigned k = U.ambient_k();
    const unsigned n = U.dim();
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint8_t> weights(PS.size());
    if (k == 1) {
        std::fill(weights.begin(), weights.end(), static_cast<std::uint8_t>(n));
        return weights;
    }
    for_each_rank<RankScratch>(
        PS.size(), exec,
        [&] {
            return RankScratch{FqRank(T, k - 1), Vec(k), std::vector<Elem>(std::size_t{n} * (k - 1))};
        },
        [&](std::uint64_t r, RankScratch& s) {
            PS.point(r, s.point);
            unsigned lead = 0;
            while (s.point[lead].v == 0) ++lead;
            // The point is cut out by x_j - P_j x_lead = 0 for j != lead.
            for (unsigned i = 0; i < n; ++i) {
                const Vec& b = U.basis()[i];
                unsigned col = 0;
                for (unsigned j = 0; j < k; ++j) {
                    if (j == lead) continue;
                    s.images[std::size_t{i} * (k - 1) + col++] = F.sub(b[j], F.mul(s.point[j], b[lead]));
                }
            }
            weights[r] = static_cast<std::uint8_t>(n - s.rank(s.images));
        });
    return weights;
}

std::vector<std::uint8_t> hyperplane_weights(const FqSubspace& U, Exec exec) {
    const Tower& T = U.tower();
    const Field& F = T.fqm();
    const unsigned k = U.ambient_k();
    const unsigned n = U.dim();
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint8_t> weights(PS.size());
    for_each_rank<RankScratch>(
        PS.size(), exec, [&] { return RankScratch{FqRank(T, 1), Vec(k), std::vector<Elem>(n)}; },
        [&](std::uint64_t r, RankScratch& s) {
            PS.point(r, s.point);
            for (unsigned i = 0; i < n; ++i) {
                Elem acc = F.zero();
                for (unsigned j = 0; j < k; ++j) acc = F.add(acc, F.mul(s.point[j], U.basis()[i][j]));
                s.images[i] = acc;
            }
            weights[r] = static_cast<std::uint8_t>(n - s.rank(s.images));
        });
    return weights;
}

std::vector<std::uint8_t> hyperplane_span_ranks(const FqSubspace& U, Exec exec) {
    const Field& F = U.tower().fqm();
    const unsigned k = U.ambient_k();
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint8_t> spans(PS.size());
    struct Scratch {
        std::vector<Vec> eq;
    };
    for_each_rank<Scratch>(
        PS.size(), exec, [&] { return Scratch{std::vector<Vec>(1, Vec(k))}; },
        [&](std::uint64_t r, Scratch& s) {
            PS.point(r, s.eq[0]);
            spans[r] = static_cast<std::uint8_t>(span_rank(F, U.kernel_of_functionals(s.eq), k));
        });
    return spans;
}

std::vector<std::uint32_t> hyperplane_incidences(const Field& F, unsigned k, const std::vector<Vec>& points,
                                                 Exec exec) {
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint32_t> counts(PS.size());
    for_each_rank<Vec>(
        PS.size(), exec, [&] { return Vec(k); },
        [&](std::uint64_t r, Vec& c) {
            PS.point(r, c);
            std::uint32_t hits = 0;
            for (const Vec& P : points) {
                Elem acc = F.zero();
                for (unsigned j = 0; j < k; ++j) acc = F.add(acc, F.mul(c[j], P[j]));
                hits += acc.v == 0;
            }
            counts[r] = hits;
        });
    return counts;
}

std::vector<std::uint8_t> codeword_weights(const Tower& T, const Matrix& G, Exec exec) {
    const Field& F = T.fqm();
    const auto k = static_cast<unsigned>(G.rows());
    const std::size_t n = G.cols();
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint8_t> weights(PS.size());
    for_each_rank<RankScratch>(
        PS.size(), exec, [&] { return RankScratch{FqRank(T, 1), Vec(k), std::vector<Elem>(n)}; },
        [&](std::uint64_t r, RankScratch& s) {
            PS.point(r, s.point);
            for (std::size_t c = 0; c < n; ++c) {
                Elem acc = F.zero();
                for (unsigned i = 0; i < k; ++i) acc = F.add(acc, F.mul(s.point[i], G(i, c)));
                s.images[c] = acc;
            }
            weights[r] = static_cast<std::uint8_t>(s.rank(s.images));
        });
    return weights;
}

std::vector<std::uint8_t> secant_cover(const Field& F, unsigned k, const std::vector<Vec>& points, Exec exec) {
    const ProjectiveSpace PS(F, k);
    std::vector<std::uint8_t> covered(PS.size(), 0);
    std::vector<Vec> pts;
    pts.reserve(points.size());
    for (const Vec& v : points) {
        require(v.size() == k, "secant_cover: wrong vector length");
        Vec w = v;
        require(PS.normalize(w), "secant_cover: zero vector");
        covered[PS.rank_of(w)] = 1;
        pts.push_back(std::move(w));
    }
    const auto count = static_cast<std::int64_t>(pts.size());
    auto mark_lines_from = [&](std::int64_t a, Vec& buf) {
        for (std::int64_t b = a + 1; b < count; ++b) {
            const Vec& P = pts[a];
            const Vec& R = pts[b];
            if (P == R) continue;
            for (std::uint32_t t = 0; t < F.size(); ++t) {
                for (unsigned j = 0; j < k; ++j) buf[j] = F.add(P[j], F.mul(Elem{t}, R[j]));
                std::atomic_ref<std::uint8_t>(covered[PS.rank_of(buf)]).store(1, std::memory_order_relaxed);
            }
        }
    };
    if (exec == Exec::serial) {
        Vec buf(k);
        for (std::int64_t a = 0; a < count; ++a) mark_lines_from(a, buf);
    } else {
#pragma omp parallel
        {
            Vec buf(k);
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t a = 0; a < count; ++a) mark_lines_from(a, buf);
        }
    }
    return covered;
}

unsigned min_rank_distance(const Tower& T, const Matrix& G, std::span<const Elem> v, Exec exec) {
    const Field& F = T.fqm();
    const std::size_t k = G.rows();
    const std::size_t n = G.cols();
    require(v.size() == n, "min_rank_distance: wrong vector length");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= F.size();
    struct Scratch {
        FqRank rank;
        std::vector<Elem> diff;
    };
    auto distance = [&](std::uint64_t msg, Scratch& s) {
        for (std::size_t c = 0; c < n; ++c) s.diff[c] = v[c];
        for (std::size_t i = 0; i < k; ++i) {
            const Elem x{static_cast<std::uint32_t>(msg % F.size())};
            msg /= F.size();
            if (x.v == 0) continue;
            for (std::size_t c = 0; c < n; ++c) s.diff[c] = F.sub(s.diff[c], F.mul(x, G(i, c)));
        }
        return s.rank(s.diff);
    };
    unsigned best = static_cast<unsigned>(n);
    if (exec == Exec::serial) {
        Scratch s{FqRank(T, 1), std::vector<Elem>(n)};
        for (std::uint64_t msg = 0; msg < total && best > 0; ++msg) best = std::min(best, distance(msg, s));
        return best;
    }
    const auto last = static_cast<std::int64_t>(total);
#pragma omp parallel reduction(min : best)
    {
        Scratch s{FqRank(T, 1), std::vector<Elem>(n)};
#pragma omp for schedule(static)
        for (std::int64_t msg = 0; msg < last; ++msg) best = std::min(best, distance(static_cast<std::uint64_t>(msg), s));
    }
    return best;
}

namespace {

bool contains_all(const std::vector<std::uint32_t>& basis, const std::uint64_t* set) {
    for (std::uint32_t x : basis)
        if (((set[x >> 6] >> (x & 63)) & 1) == 0) return false;
    return true;
}

}  // namespace

SupportPair find_nested_support(const std::vector<std::uint8_t>& weight,
                                const std::vector<std::vector<std::uint32_t>>& basis_index,
                                const std::vector<std::uint64_t>& membership, std::size_t words_per_set, Exec exec) {
    const auto count = static_cast<std::int64_t>(weight.size());
    require(basis_index.size() == weight.size() && membership.size() == weight.size() * words_per_set,
            "find_nested_support: inconsistent inputs");
    // heavier[w]: indices with weight > w, ascending.
    const std::uint8_t top = weight.empty() ? 0 : *std::max_element(weight.begin(), weight.end());
    std::vector<std::vector<std::int64_t>> heavier(std::size_t{top} + 1);
    for (unsigned w = 0; w <= top; ++w)
        for (std::int64_t b = 0; b < count; ++b)
            if (weight[b] > w) heavier[w].push_back(b);
    auto first_for = [&](std::int64_t a) -> std::int64_t {
        for (std::int64_t b : heavier[weight[a]])
            if (contains_all(basis_index[a], membership.data() + b * words_per_set)) return b;
        return -1;
    };
    SupportPair out;
    if (exec == Exec::serial) {
        for (std::int64_t a = 0; a < count; ++a) {
            const std::int64_t b = first_for(a);
            if (b >= 0) return {a, b};
        }
        return out;
    }
    std::atomic<std::int64_t> best_a{count};
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t a = 0; a < count; ++a) {
        if (a > best_a.load(std::memory_order_relaxed)) continue;
        if (first_for(a) >= 0) {
            std::int64_t cur = best_a.load();
            while (a < cur && !best_a.compare_exchange_weak(cur, a)) {
            }
        }
    }
    if (best_a.load() < count) out = {best_a.load(), first_for(best_a.load())};
    return out;
}

}  // namespace scatterforge::kernels
