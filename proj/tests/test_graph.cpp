#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/graph_oracle.hpp"
#include "support/instance_factory.hpp"
#include "tmsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

using namespace tmsim;

namespace {

bool block_lower_triangular(const Matrix& permuted,
                            const std::vector<CommunicationClass>& classes) {
    int row_start = 0;
    for (const CommunicationClass& cls : classes) {
        const int row_end = row_start + cls.size();
        for (int a = row_start; a < row_end; ++a) {
            for (int b = row_end; b < permuted.cols(); ++b) {
                if (permuted(a, b) != 0.0) return false;
            }
        }
        row_start = row_end;
    }
    return true;
}

std::set<std::set<int>> as_set_of_sets(const std::vector<std::vector<int>>& parts) {
    std::set<std::set<int>> out;
    for (const auto& part : parts) out.emplace(part.begin(), part.end());
    return out;
}

}  // namespace

TEST_CASE("identity matrix splits into singleton components") {
    const auto components = strongly_connected_components(Matrix::Identity(5, 5));
    REQUIRE(components.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(components[i] == std::vector<int>{i});
    }
}

TEST_CASE("strictly positive matrix is one component") {
    const auto components = strongly_connected_components(Matrix::Constant(6, 6, 1.0 / 6));
    REQUIRE(components.size() == 1);
    CHECK(components[0].size() == 6);
}

TEST_CASE("lower triangular chain gives singleton components") {
    Matrix m(3, 3);
    m << 1.0, 0.0, 0.0,
         0.5, 0.5, 0.0,
         0.0, 0.5, 0.5;
    const auto components = strongly_connected_components(m);
    REQUIRE(components.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(components[i] == std::vector<int>{i});
}

TEST_CASE("components agree with the brute-force path oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 11);
        const Matrix m = factory::random_sparse_stochastic(n, rng, 0.25);
        const auto reach = graph_oracle::reachability(m);

        const auto components = strongly_connected_components(m);
        std::vector<int> component_of(n, -1);
        int total = 0;
        for (size_t c = 0; c < components.size(); ++c) {
            for (int v : components[c]) {
                component_of[v] = static_cast<int>(c);
                ++total;
            }
        }
        REQUIRE(total == n);  // partition
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                CHECK((component_of[a] == component_of[b]) ==
                      graph_oracle::same_component(reach, a, b));
            }
        }
    }
}

TEST_CASE("irreducibility matches the boolean-power oracle") {
    CHECK(is_irreducible(Matrix::Constant(4, 4, 0.25)));
    CHECK(classify_structure(Matrix::Constant(1, 1, 1.0)) == MatrixStructure::Scalar);
    CHECK_FALSE(is_irreducible(Matrix::Constant(1, 1, 1.0)));

    Matrix block(4, 4);
    block << 0.5, 0.5, 0.0, 0.0,
             0.5, 0.5, 0.0, 0.0,
             0.2, 0.2, 0.3, 0.3,
             0.2, 0.2, 0.3, 0.3;
    CHECK_FALSE(is_irreducible(block));
    CHECK(classify_structure(block) == MatrixStructure::Reducible);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const Matrix m = trial % 2 == 0 ? factory::random_sparse_stochastic(n, rng, 0.3)
                                        : factory::sparse_irreducible(n, rng);
        CHECK(is_irreducible(m) == graph_oracle::irreducible(m));
    }
}

TEST_CASE("permuting an irreducible matrix keeps it irreducible") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const Matrix m = factory::sparse_irreducible(n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Matrix shuffled = permute(m, perm);
        CHECK(is_irreducible(shuffled));
        CHECK(graph_oracle::irreducible(shuffled));
    }
}

TEST_CASE("frobenius_form of an irreducible matrix is a single class") {
    const Matrix m = Matrix::Constant(4, 4, 0.25);
    const auto decomp = frobenius_form(m);
    REQUIRE(decomp.class_count() == 1);
    CHECK(decomp.classes[0].members == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(decomp.classes[0].is_scalar);
    CHECK(decomp.permutation == std::vector<int>{0, 1, 2, 3});
    CHECK(decomp.accessibility == std::vector<std::vector<bool>>{{true}});
}

TEST_CASE("frobenius_form of the identity is all scalar classes") {
    const auto decomp = frobenius_form(Matrix::Identity(4, 4));
    REQUIRE(decomp.class_count() == 4);
    for (int c = 0; c < 4; ++c) {
        CHECK(decomp.classes[c].is_scalar);
        CHECK(decomp.classes[c].members == std::vector<int>{c});
        for (int d = 0; d < 4; ++d) {
            CHECK(decomp.accessibility[c][d] == (c == d));
        }
    }
    CHECK(decomp.permutation == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("construct-then-shuffle round trip recovers the class structure") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const auto instance = factory::make_reducible(rng);
        const Matrix& m = instance.matrix;
        const auto decomp = frobenius_form(m);

        REQUIRE(decomp.class_count() == static_cast<int>(instance.classes.size()));
        CHECK(as_set_of_sets(instance.classes) ==
              as_set_of_sets([&] {
                  std::vector<std::vector<int>> parts;
                  for (const auto& cls : decomp.classes) parts.push_back(cls.members);
                  return parts;
              }()));

        // Round trip: un-permuting the permuted matrix reproduces M exactly.
        const Matrix permuted = permute(m, decomp.permutation);
        for (int a = 0; a < m.rows(); ++a) {
            for (int b = 0; b < m.cols(); ++b) {
                CHECK(permuted(a, b) == m(decomp.permutation[a], decomp.permutation[b]));
            }
        }
        CHECK(block_lower_triangular(permuted, decomp.classes));

        // Diagonal blocks: scalar or irreducible.
        int start = 0;
        for (const auto& cls : decomp.classes) {
            const int size = cls.size();
            CHECK(cls.is_scalar == (size == 1));
            if (size >= 2) {
                CHECK(is_irreducible(permuted.block(start, start, size, size)));
            }
            start += size;
        }
    }
}

TEST_CASE("accessibility is reflexive, ordered, transitively closed") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = factory::random_sparse_stochastic(
            2 + static_cast<int>(rng() % 11), rng, 0.2);
        const auto decomp = frobenius_form(m);
        const auto& access = decomp.accessibility;
        const int k = decomp.class_count();

        for (int j = 0; j < k; ++j) {
            CHECK(access[j][j]);
            for (int i = 0; i < k; ++i) {
                if (access[j][i]) CHECK(j <= i);
                for (int h = 0; h < k; ++h) {
                    if (access[j][i] && access[i][h]) CHECK(access[j][h]);
                }
            }
        }
    }
}

TEST_CASE("accessibility matches the brute-force path oracle") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = factory::random_sparse_stochastic(
            2 + static_cast<int>(rng() % 11), rng, 0.25);
        const auto decomp = frobenius_form(m);
        const auto reach = graph_oracle::reachability(m);
        const int k = decomp.class_count();

        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < k; ++i) {
                bool oracle_access = j == i;
                for (int a : decomp.classes[j].members) {
                    for (int b : decomp.classes[i].members) {
                        if (reach[a][b]) oracle_access = true;
                    }
                }
                CHECK(decomp.accessibility[j][i] == oracle_access);
            }
        }
    }
}

TEST_CASE("three-class chain accessibility includes the transitive pair") {
    // 0 -> 1 -> 2 with no direct (0,2) arc.
    Matrix m(3, 3);
    m << 1.0, 0.0, 0.0,
         0.5, 0.5, 0.0,
         0.0, 0.5, 0.5;
    const auto decomp = frobenius_form(m);
    REQUIRE(decomp.class_count() == 3);
    CHECK(decomp.accessibility[0][2]);  // by transitivity
    CHECK_FALSE(decomp.accessibility[2][0]);
}

TEST_CASE("accessibility recomputation validates its inputs") {
    const Matrix m = Matrix::Identity(3, 3);
    const auto decomp = frobenius_form(m);
    CHECK_THROWS_AS(accessibility(decomp, Matrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("irreducible stochastic matrices admit no non-constant sub-invariant vector") {
    std::mt19937_64 rng(1234);
    int tested = 0;
    while (tested < 200) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Matrix m = tested % 2 == 0 ? factory::random_row_stochastic(n, rng)
                                         : factory::sparse_irreducible(n, rng);
        if (!is_irreducible(m)) continue;
        ++tested;

        Vector y = factory::random_expertise(n, rng);
        if ((y.array() == y[0]).all()) continue;  // want a non-constant vector

        const Vector my = m * y;
        // M y <= y componentwise must fail somewhere.
        CHECK((my.array() > y.array() + 1e-12).any());

        const Vector constant = Vector::Constant(n, 0.37);
        CHECK(((m * constant) - constant).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
