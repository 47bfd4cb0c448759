#ifndef TMSIM_TESTS_REFERENCE_MODEL_HPP
#define TMSIM_TESTS_REFERENCE_MODEL_HPP

// Scalar-loop reference implementation of the update laws, kept free of
// Eigen and of the library under test. This is the independent oracle the
// matrix-form step is checked against.

#include <algorithm>
#include <vector>

namespace refmodel {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat next_appraisal(const Mat& m, const Vec& y, const Vec& lambda) {
    const size_t n = y.size();
    double total = 0.0;
    for (double v : y) total += v;

    Mat out(n, Vec(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            out[i][j] = (1.0 - lambda[i]) * m[i][j] + lambda[i] * (y[j] / total);
        }
    }
    return out;
}

inline Vec next_expertise(const Mat& m, const Vec& y, const Vec& learning) {
    const size_t n = y.size();
    Vec out(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double perceived = 0.0;
        for (size_t k = 0; k < n; ++k) perceived += m[i][k] * y[k];
        out[i] = y[i] + learning[i] * std::max(perceived - y[i], 0.0);
    }
    return out;
}

}  // namespace refmodel

#endif
