#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "mtcurv/corpus.hpp"
#include "mtcurv/quaternion.hpp"

namespace mtcurv::test {

inline double comp_dist(const Quaternion& a, const Quaternion& b) {
    double err = 0.0;
    for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(a[k] - b[k]));
    return err;
}

inline double comp_mag(const Quaternion& a) {
    double mag = 0.0;
    for (int k = 0; k < 4; ++k) mag = std::max(mag, std::abs(a[k]));
    return mag;
}

inline Quaternion random_quaternion(Rng& rng, bool complex_parts = true) {
    const auto c = [&] {
        return Complex(rng.uniform(-2.0, 2.0), complex_parts ? rng.uniform(-2.0, 2.0) : 0.0);
    };
    return Quaternion(c(), c(), c(), c());
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace mtcurv::test
