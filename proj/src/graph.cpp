#include "tmsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tmsim {

namespace {

void check_square_nonnegative(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("graph analysis requires a non-empty square matrix");
    }
    if ((m.array() < 0.0).any()) {
        throw std::invalid_argument("graph analysis requires a nonnegative matrix");
    }
}

// Successor lists under the arc convention: succ[j] = {i : M(i,j) != 0}.
std::vector<std::vector<int>> successor_lists(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<std::vector<int>> succ(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (m(i, j) != 0.0) succ[j].push_back(i);
        }
    }
    return succ;
}

// Iterative Tarjan; component ids are assigned in completion order.
struct TarjanState {
    const std::vector<std::vector<int>>& succ;
    std::vector<int> dfs_number;
    std::vector<int> low_link;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    std::vector<int> component_of;
    int next_dfs_number = 0;
    int component_count = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& s)
        : succ(s),
          dfs_number(s.size(), -1),
          low_link(s.size(), -1),
          on_stack(s.size(), false),
          component_of(s.size(), -1) {}

    void run(int root) {
        struct Frame {
            int vertex;
            size_t next_child;
        };
        std::vector<Frame> frames;
        frames.push_back({root, 0});
        dfs_number[root] = low_link[root] = next_dfs_number++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& frame = frames.back();
            const int v = frame.vertex;
            if (frame.next_child < succ[v].size()) {
                const int w = succ[v][frame.next_child++];
                if (dfs_number[w] == -1) {
                    dfs_number[w] = low_link[w] = next_dfs_number++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low_link[v] = std::min(low_link[v], dfs_number[w]);
                }
            } else {
                if (low_link[v] == dfs_number[v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component_of[w] = component_count;
                    } while (w != v);
                    ++component_count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().vertex;
                    low_link[parent] = std::min(low_link[parent], low_link[v]);
                }
            }
        }
    }
};

std::vector<int> component_assignment(const Matrix& m, int& component_count) {
    const auto succ = successor_lists(m);
    TarjanState tarjan(succ);
    for (int v = 0; v < static_cast<int>(succ.size()); ++v) {
        if (tarjan.dfs_number[v] == -1) tarjan.run(v);
    }
    component_count = tarjan.component_count;
    return tarjan.component_of;
}

std::vector<std::vector<int>> group_members(const std::vector<int>& component_of,
                                            int component_count) {
    std::vector<std::vector<int>> members(component_count);
    for (int v = 0; v < static_cast<int>(component_of.size()); ++v) {
        members[component_of[v]].push_back(v);  // ascending by construction
    }
    return members;
}

std::vector<std::vector<bool>> transitive_reflexive_closure(
    std::vector<std::vector<bool>> relation) {
    const int k = static_cast<int>(relation.size());
    for (int i = 0; i < k; ++i) relation[i][i] = true;
    for (int mid = 0; mid < k; ++mid) {
        for (int a = 0; a < k; ++a) {
            if (!relation[a][mid]) continue;
            for (int b = 0; b < k; ++b) {
                if (relation[mid][b]) relation[a][b] = true;
            }
        }
    }
    return relation;
}

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const Matrix& m) {
    check_square_nonnegative(m);
    int component_count = 0;
    const auto component_of = component_assignment(m, component_count);
    auto members = group_members(component_of, component_count);
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return members;
}

MatrixStructure classify_structure(const Matrix& m) {
    check_square_nonnegative(m);
    if (m.rows() == 1) return MatrixStructure::Scalar;
    int component_count = 0;
    component_assignment(m, component_count);
    return component_count == 1 ? MatrixStructure::Irreducible : MatrixStructure::Reducible;
}

bool is_irreducible(const Matrix& m) {
    return classify_structure(m) == MatrixStructure::Irreducible;
}

FrobeniusDecomposition frobenius_form(const Matrix& m) {
    check_square_nonnegative(m);
    const int n = static_cast<int>(m.rows());

    int component_count = 0;
    const auto component_of = component_assignment(m, component_count);
    const auto members = group_members(component_of, component_count);

    // Condensation arcs: class a -> class b iff some node of a influences
    // some node of b, i.e. M(v_b, v_a) != 0 for v_a in a, v_b in b.
    std::vector<std::vector<bool>> arc(component_count,
                                       std::vector<bool>(component_count, false));
    std::vector<int> in_degree(component_count, 0);
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) {
            if (m(row, col) == 0.0) continue;
            const int a = component_of[col];
            const int b = component_of[row];
            if (a != b && !arc[a][b]) {
                arc[a][b] = true;
                ++in_degree[b];
            }
        }
    }

    // Kahn's algorithm; among ready classes always pick the one containing
    // the smallest original node, so the block order is deterministic.
    std::vector<int> block_order;
    block_order.reserve(component_count);
    std::vector<bool> emitted(component_count, false);
    for (int step = 0; step < component_count; ++step) {
        int best = -1;
        for (int c = 0; c < component_count; ++c) {
            if (emitted[c] || in_degree[c] != 0) continue;
            if (best == -1 || members[c].front() < members[best].front()) best = c;
        }
        if (best == -1) {
            throw std::logic_error("condensation is not acyclic");  // unreachable
        }
        emitted[best] = true;
        block_order.push_back(best);
        for (int c = 0; c < component_count; ++c) {
            if (arc[best][c]) --in_degree[c];
        }
    }

    FrobeniusDecomposition decomp;
    decomp.permutation.reserve(n);
    decomp.classes.reserve(component_count);
    for (int pos = 0; pos < component_count; ++pos) {
        const int c = block_order[pos];
        CommunicationClass cls;
        cls.index = pos;
        cls.members = members[c];
        cls.is_scalar = cls.members.size() == 1;
        decomp.permutation.insert(decomp.permutation.end(), cls.members.begin(),
                                  cls.members.end());
        decomp.classes.push_back(std::move(cls));
    }
    decomp.accessibility = accessibility(decomp, m);
    return decomp;
}

std::vector<std::vector<bool>> accessibility(const FrobeniusDecomposition& decomp,
                                             const Matrix& m) {
    check_square_nonnegative(m);
    if (decomp.node_count() != m.rows()) {
        throw std::invalid_argument("decomposition does not match matrix dimensions");
    }
    const int n = decomp.node_count();
    const int k = decomp.class_count();

    std::vector<int> class_of(n, -1);
    for (const CommunicationClass& cls : decomp.classes) {
        for (int v : cls.members) {
            if (v < 0 || v >= n || class_of[v] != -1) {
                throw std::invalid_argument("classes do not partition the node set");
            }
            class_of[v] = cls.index;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (class_of[v] == -1) {
            throw std::invalid_argument("classes do not partition the node set");
        }
    }

    std::vector<std::vector<bool>> direct(k, std::vector<bool>(k, false));
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) {
            if (m(row, col) != 0.0) direct[class_of[col]][class_of[row]] = true;
        }
    }
    return transitive_reflexive_closure(std::move(direct));
}

Matrix permute(const Matrix& m, const std::vector<int>& permutation) {
    const int n = static_cast<int>(m.rows());
    if (static_cast<int>(permutation.size()) != n || m.cols() != n) {
        throw std::invalid_argument("permutation length does not match matrix size");
    }
    Matrix out(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            out(a, b) = m(permutation[a], permutation[b]);
        }
    }
    return out;
}

}  // namespace tmsim
