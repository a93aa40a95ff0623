#pragma once

#include "tropo/polyhedron.hpp"

#include <utility>
#include <vector>

namespace tropo {

/// Finite polyhedral complex, stored closed under faces.
struct PolyhedralComplex {
  int ambient_rank = 0;
  std::vector<Polyhedron> cells;                   // sorted by dimension, then canonical order
  std::vector<std::pair<int, int>> face_relation;  // (child, parent) with child a facet of parent

  std::vector<Polyhedron> maximal() const;
  std::vector<Polyhedron> cells_of_dim(int d) const;
  int dim() const;
};

/// All nonempty faces of the given cells, deduplicated and sorted.
std::vector<Polyhedron> face_closure(const std::vector<Polyhedron>& cells);
PolyhedralComplex make_complex(int r, const std::vector<Polyhedron>& generators);

/// Conditions (a) and (b): closed under faces, pairwise intersections are common faces.
bool is_valid_complex(const PolyhedralComplex& C);

/// Inclusion-maximal nonempty intersections σ1 ∩ σ2 of maximal cells.
PolyhedralComplex common_refinement(const PolyhedralComplex& C1, const PolyhedralComplex& C2);

/// {x : a.x = b}, normalized to a primitive integer a with positive leading entry.
struct Hyperplane {
  RatVector a;
  Rational b;
};
bool operator<(const Hyperplane& h, const Hyperplane& k);

/// Hyperplanes supporting any inequality or equality of the cells.
std::vector<Hyperplane> hyperplanes_of(const std::vector<Polyhedron>& cells);
/// Does h cut P into two pieces of the same dimension as P?
bool cuts(const Hyperplane& h, const Polyhedron& P);
/// Maximal-dimensional pieces of P cut out by the hyperplanes.
std::vector<Polyhedron> split(const Polyhedron& P, const std::vector<Hyperplane>& hs);

}  // namespace tropo
