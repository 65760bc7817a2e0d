#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtcurv/chart.hpp"
#include "mtcurv/errors.hpp"
#include "mtcurv/expr.hpp"
#include "mtcurv/field.hpp"

namespace mtcurv {

/// splitmix64. Hand-rolled so corpora are bit-identical across platforms and
/// standard-library versions (std distributions make no such promise).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

/// Deterministic corpus of pseudo-random fields over one chart, plus the
/// sample points the verification suites evaluate at. Regeneration from the
/// same (seed, count) is bit-identical; sampling stays inside the chart's
/// region, which is chosen away from coordinate singularities.
struct FieldCorpus {
    std::uint64_t seed = 0;
    int count = 0;
    int points_per_field = 0;
    ChartPtr chart;
    std::vector<QuatField> fields;
    std::vector<Coords> points;   // points_per_field entries per field, in order

    std::vector<Coords> field_points(int field_index) const {
        const auto first = points.begin() + field_index * points_per_field;
        return {first, first + points_per_field};
    }
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

/// One random term: coefficient in [-2, 2] times a factor drawn from
/// monomials q_i^k (k <= 3), sin q_i, cos q_i, or a product of two such
/// factors with total polynomial degree <= 3. Trig arguments stay bare
/// coordinates so derivative magnitudes remain bounded on the region.
inline Expr random_term(Rng& rng, const std::array<std::string, 3>& coords) {
    const auto var = [&](int i) { return Expr::variable(coords[static_cast<std::size_t>(i)]); };
    const auto atom = [&](int max_power) {
        const int kind = rng.below(3);
        const int i = rng.below(3);
        if (kind == 0) {
            const int k = 1 + rng.below(max_power);
            return k == 1 ? var(i) : pow(var(i), static_cast<double>(k));
        }
        return Expr::unary(kind == 1 ? UnaryOp::sin : UnaryOp::cos, var(i));
    };
    const double coef = rng.uniform(-2.0, 2.0);
    Expr factor;
    if (rng.below(4) == 3)
        factor = atom(2) * atom(1);   // product of two factors
    else
        factor = atom(3);
    return Expr::constant(coef) * factor;
}

inline Expr random_component(Rng& rng, const std::array<std::string, 3>& coords, int min_terms,
                             int max_terms) {
    const int terms = min_terms + rng.below(max_terms - min_terms + 1);
    Expr sum;   // zero
    for (int t = 0; t < terms; ++t) sum = sum + random_term(rng, coords);
    return sum;
}

inline Coords random_point(Rng& rng, const Region& region) {
    return {rng.uniform(region[0][0], region[0][1]), rng.uniform(region[1][0], region[1][1]),
            rng.uniform(region[2][0], region[2][1])};
}

} // namespace detail

/// Generates `count` fields on `chart` with `points_per_field` sample points
/// each. Every field is screened to evaluate cleanly at 50 region samples
/// before it is accepted.
inline FieldCorpus generate_corpus(std::uint64_t seed, int count, ChartPtr chart,
                                   int points_per_field = 3) {
    if (count < 1) throw DomainError("corpus count must be >= 1");
    if (points_per_field < 1) throw DomainError("points_per_field must be >= 1");

    FieldCorpus corpus;
    corpus.seed = seed;
    corpus.count = count;
    corpus.points_per_field = points_per_field;
    corpus.chart = chart;

    Rng rng(seed ^ detail::fnv1a(chart->name()));
    const Region region = chart->region();
    const auto& coords = chart->coord_names();

    std::vector<Coords> screen;
    screen.reserve(50);
    for (int i = 0; i < 50; ++i) screen.push_back(detail::random_point(rng, region));

    for (int n = 0; n < count; ++n) {
        for (int attempt = 0;; ++attempt) {
            ComplexExpr f0(detail::random_component(rng, coords, 1, 4),
                           detail::random_component(rng, coords, 0, 2));
            std::array<ComplexExpr, 3> fv;
            for (auto& c : fv)
                c = ComplexExpr(detail::random_component(rng, coords, 1, 4),
                                detail::random_component(rng, coords, 0, 2));
            QuatField field(chart, std::move(f0), std::move(fv));
            bool clean = true;
            try {
                for (const Coords& p : screen) field.components_at(p);
            } catch (const Error&) {
                clean = false;
            }
            if (clean) {
                corpus.fields.push_back(std::move(field));
                break;
            }
            if (attempt >= 100)
                throw DomainError("could not generate a clean field on chart '" + chart->name() +
                                  "'");
        }
        for (int k = 0; k < points_per_field; ++k)
            corpus.points.push_back(detail::random_point(rng, region));
    }
    return corpus;
}

} // namespace mtcurv
