#ifndef TMSIM_TESTS_GRAPH_ORACLE_HPP
#define TMSIM_TESTS_GRAPH_ORACLE_HPP

// Brute-force path oracles for the graph analysis tests. Same arc
// convention as the library ((j,i) is an arc iff M(i,j) != 0) but computed
// by exhaustive closure, independent of the Tarjan path.

#include <Eigen/Dense>

#include <vector>

namespace graph_oracle {

using BoolMat = std::vector<std::vector<bool>>;

// reach[a][b]: path of length >= 1 from a to b.
inline BoolMat reachability(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    BoolMat reach(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) reach[a][b] = m(b, a) != 0.0;
    }
    for (int mid = 0; mid < n; ++mid) {
        for (int a = 0; a < n; ++a) {
            if (!reach[a][mid]) continue;
            for (int b = 0; b < n; ++b) {
                if (reach[mid][b]) reach[a][b] = true;
            }
        }
    }
    return reach;
}

inline bool same_component(const BoolMat& reach, int a, int b) {
    return a == b || (reach[a][b] && reach[b][a]);
}

// Boolean-power irreducibility test: I + sum of the first N-1 adjacency
// powers must be all-positive.
inline bool irreducible(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n < 2) return false;
    BoolMat adjacency(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) adjacency[a][b] = m(b, a) != 0.0;
    }
    BoolMat power = adjacency;
    BoolMat accumulated = adjacency;
    for (int p = 2; p <= n - 1; ++p) {
        BoolMat next(n, std::vector<bool>(n, false));
        for (int a = 0; a < n; ++a) {
            for (int mid = 0; mid < n; ++mid) {
                if (!power[a][mid]) continue;
                for (int b = 0; b < n; ++b) {
                    if (adjacency[mid][b]) next[a][b] = true;
                }
            }
        }
        power = next;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (power[a][b]) accumulated[a][b] = true;
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b && !accumulated[a][b]) return false;
        }
    }
    return true;
}

}  // namespace graph_oracle

#endif
