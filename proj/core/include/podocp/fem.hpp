// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "podocp/numerics.hpp"

namespace podocp {

/// Structured triangulation of (0,1)² with n_s nodes per side.
///
/// Nodes are numbered lexicographically with x₁ running fastest. Every
/// square cell is cut along its bottom-left to top-right diagonal.
class UnitSquareMesh {
public:
  explicit UnitSquareMesh(int nodes_per_side);

  [[nodiscard]] int nodes_per_side() const noexcept { return n_s_; }
  [[nodiscard]] Eigen::Index num_nodes() const noexcept { return static_cast<Eigen::Index>(coords_.size()); }
  [[nodiscard]] const std::vector<std::array<double, 2>>& coords() const noexcept { return coords_; }
  [[nodiscard]] const std::vector<std::array<int, 3>>& triangles() const noexcept { return triangles_; }

  [[nodiscard]] int node(int i, int j) const noexcept { return j * n_s_ + i; }

  /// Signed area of triangle t (positive for counter-clockwise orientation).
  [[nodiscard]] double signed_area(std::size_t t) const;

private:
  int n_s_;
  std::vector<std::array<double, 2>> coords_;
  std::vector<std::array<int, 3>> triangles_;
};

/// P1 finite-element space with its assembled product matrices.
struct FeSpace {
  UnitSquareMesh mesh;
  SparseSymMatrix mass;       // L²(Ω) product
  SparseSymMatrix stiffness;  // ∫∇φᵢ·∇φⱼ
  SparseSymMatrix h1;         // mass + stiffness, the V product
  SparseSymMatrix control;    // U product; the L² mass for U = L²(Ω)

  [[nodiscard]] Eigen::Index dim() const noexcept { return mesh.num_nodes(); }
};

std::shared_ptr<const FeSpace> build_space(int nodes_per_side);

/// Nodal interpolation. Throws NonFiniteValue if f is not finite at a node.
Vector interpolate(const FeSpace& space, const std::function<double(double, double)>& f);

}  // namespace podocp
