#pragma once

#include <cstdint>
#include <vector>

#include "kvis/graph.hpp"

namespace kvis::testing {

// All connected graphs on n vertices up to isomorphism (practical for n <= 7).
const std::vector<Graph>& connected_graphs(int n);

// All trees on n vertices up to isomorphism (practical for n <= 12).
const std::vector<Graph>& all_trees(int n);

// Uniform random labeled tree from a Pruefer sequence.
Graph random_tree(int n, uint64_t seed);

// Connected vertex subsets of a tree, as induced subtrees remapped to dense ids.
std::vector<Graph> subtrees_of(const Graph& tree);

// AHU canonical string; equal iff isomorphic (trees only).
std::string tree_canonical(const Graph& tree);

} // namespace kvis::testing
