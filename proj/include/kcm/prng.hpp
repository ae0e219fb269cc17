#pragma once

// Seeded deterministic randomness for model/point generation. mt19937_64
// output is fixed by the C++ standard, and range reduction here avoids
// std::uniform_int_distribution (whose mapping is implementation-defined),
// so identical seeds give identical streams on every platform.

#include <kcm/rational.hpp>

#include <cstdint>
#include <random>

namespace kcm {

class Prng {
public:
    explicit Prng(std::uint64_t seed) : eng_(seed) {}

    // Inclusive bounds. The modulo bias is irrelevant for test-data ranges.
    long int_in(long lo, long hi) {
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long max_abs_num, long max_den) {
        return Rational(int_in(-max_abs_num, max_abs_num), int_in(1, max_den));
    }

    Rational nonzero_rational(long max_abs_num, long max_den) {
        for (;;) {
            Rational r = rational(max_abs_num, max_den);
            if (!r.is_zero()) return r;
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace kcm
