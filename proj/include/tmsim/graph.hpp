#ifndef TMSIM_GRAPH_HPP
#define TMSIM_GRAPH_HPP

#include "tmsim/model.hpp"

#include <vector>

namespace tmsim {

// All graph code uses the single arc convention of the dynamics: the arc
// (j,i) exists iff M(i,j) != 0, i.e. row i listens to column j and
// influence flows from j to i. Zero entries are tested exactly, never by
// tolerance: only user-supplied matrices are decomposed.

/// One diagonal block of the Frobenius normal form. `members` are original
/// node indices (0-based, ascending); a block of size 1 is reported as
/// scalar, never as irreducible.
struct CommunicationClass {
    int index = 0;
    std::vector<int> members;
    bool is_scalar = false;

    int size() const { return static_cast<int>(members.size()); }
};

/// Permutation + class structure bringing a nonnegative matrix to block
/// LOWER triangular form with scalar-or-irreducible diagonal blocks.
///
/// `permutation[p]` is the original node sitting at block position p, so
/// permute(M, permutation) is the reordered matrix. `accessibility[j][i]`
/// is true iff there is a path from some node of class j to some node of
/// class i (reflexive, transitively closed, and j <= i whenever true).
struct FrobeniusDecomposition {
    std::vector<int> permutation;
    std::vector<CommunicationClass> classes;
    std::vector<std::vector<bool>> accessibility;

    int node_count() const { return static_cast<int>(permutation.size()); }
    int class_count() const { return static_cast<int>(classes.size()); }
};

enum class MatrixStructure { Scalar, Irreducible, Reducible };

/// Partition of {0..N-1} into strongly connected components of the
/// influence graph of M. Components are listed with ascending members,
/// ordered by smallest member.
std::vector<std::vector<int>> strongly_connected_components(const Matrix& m);

MatrixStructure classify_structure(const Matrix& m);

/// True iff the influence graph is strongly connected. A 1x1 matrix is
/// scalar, not irreducible.
bool is_irreducible(const Matrix& m);

/// Computes the Frobenius normal form of a square nonnegative matrix.
/// Block order is a topological order of the condensation (accessing
/// classes first); ties are broken by the smallest original node index in
/// each class, which makes the result deterministic.
FrobeniusDecomposition frobenius_form(const Matrix& m);

/// Recomputes the k x k accessibility relation of `decomp`'s classes from
/// the arcs of M. Requires decomp to have been produced from M.
std::vector<std::vector<bool>> accessibility(const FrobeniusDecomposition& decomp,
                                             const Matrix& m);

/// B(a,b) = M(permutation[a], permutation[b]).
Matrix permute(const Matrix& m, const std::vector<int>& permutation);

}  // namespace tmsim

#endif
