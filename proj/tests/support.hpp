#pragma once

// Shared fixtures and generators for the test suites. The 3x4 matrix here is
// the worked example used throughout the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "isbell/gap.hpp"
#include "isbell/profunctor.hpp"

namespace testsupport {

using namespace isbell;

inline ExtReal X(const char* s) { return ExtReal::parse(s); }

inline std::vector<ExtReal> xs(std::initializer_list<const char*> items) {
    std::vector<ExtReal> out;
    for (const char* s : items) out.push_back(ExtReal::parse(s));
    return out;
}

/// The 3x4 worked example: rows c0..c2, columns d1..d4.
inline ProfunctorPtr running_example() {
    return make_profunctor(
        {"c0", "c1", "c2"}, {"d1", "d2", "d3", "d4"},
        {xs({"0.7", "1.5", "1.7", "-1.3"}),
         xs({"1.2", "2.6", "0.1", "2.2"}),
         xs({"2.0", "-1.6", "2.0", "-2.9"})});
}

inline Potential zero_presheaf(const Profunctor& M) {
    return Potential::zero(Side::presheaf, M.row_labels());
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// A small exact rational: numerator in [-bound, bound], denominator in
    /// {1, 2, 4, 5, 10}.
    Rational rational(int bound = 40) {
        static const int denoms[] = {1, 2, 4, 5, 10};
        std::uniform_int_distribution<int> num(-bound, bound);
        std::uniform_int_distribution<int> den(0, 4);
        return Rational(num(engine_), denoms[den(engine_)]);
    }

    ExtReal finite(int bound = 40) { return ExtReal(rational(bound)); }

    /// Finite with probability ~4/5, else one of the infinities.
    ExtReal ext(int bound = 40) {
        std::uniform_int_distribution<int> pick(0, 9);
        int k = pick(engine_);
        if (k == 0) return ExtReal::neg_inf();
        if (k == 1) return ExtReal::pos_inf();
        return finite(bound);
    }

    std::size_t index(std::size_t n) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        return pick(engine_);
    }

    bool flip() { return index(2) == 0; }

    ProfunctorPtr finite_matrix(std::size_t rows, std::size_t cols, int bound = 40) {
        std::vector<std::string> rl, cl;
        for (std::size_t i = 0; i < rows; ++i) rl.push_back("c" + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j) cl.push_back("d" + std::to_string(j + 1));
        std::vector<std::vector<ExtReal>> entries(rows);
        for (auto& row : entries)
            for (std::size_t j = 0; j < cols; ++j) row.push_back(finite(bound));
        return make_profunctor(std::move(rl), std::move(cl), std::move(entries));
    }

    Potential finite_potential(Side side, const std::vector<std::string>& labels, int bound = 40) {
        std::vector<ExtReal> values;
        for (std::size_t i = 0; i < labels.size(); ++i) values.push_back(finite(bound));
        return Potential(side, labels, std::move(values));
    }

    /// Finite-somewhere potential that may contain infinities.
    Potential ext_potential(Side side, const std::vector<std::string>& labels, int bound = 40) {
        std::vector<ExtReal> values;
        do {
            values.clear();
            for (std::size_t i = 0; i < labels.size(); ++i) values.push_back(ext(bound));
        } while (std::none_of(values.begin(), values.end(),
                              [](const ExtReal& v) { return v.is_finite(); }));
        return Potential(side, labels, std::move(values));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace testsupport
