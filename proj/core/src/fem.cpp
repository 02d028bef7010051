// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/fem.hpp"

#include <cmath>
#include <string>

namespace podocp {

UnitSquareMesh::UnitSquareMesh(int nodes_per_side) : n_s_(nodes_per_side) {
  PODOCP_REQUIRE(n_s_ >= 2, ErrorKind::InvalidArgument, "mesh needs at least 2 nodes per side");
  const double h = 1.0 / (n_s_ - 1);
  coords_.reserve(static_cast<std::size_t>(n_s_) * n_s_);
  for (int j = 0; j < n_s_; ++j) {
    for (int i = 0; i < n_s_; ++i) {
      // Pin the last row/column to exactly 1 so the mesh covers the square.
      const double x = (i == n_s_ - 1) ? 1.0 : i * h;
      const double y = (j == n_s_ - 1) ? 1.0 : j * h;
      coords_.push_back({x, y});
    }
  }
  triangles_.reserve(2 * static_cast<std::size_t>(n_s_ - 1) * (n_s_ - 1));
  for (int j = 0; j + 1 < n_s_; ++j) {
    for (int i = 0; i + 1 < n_s_; ++i) {
      const int bl = node(i, j);
      const int br = node(i + 1, j);
      const int tl = node(i, j + 1);
      const int tr = node(i + 1, j + 1);
      triangles_.push_back({bl, br, tr});
      triangles_.push_back({bl, tr, tl});
    }
  }
}

double UnitSquareMesh::signed_area(std::size_t t) const {
  const auto& tri = triangles_.at(t);
  const auto& a = coords_[static_cast<std::size_t>(tri[0])];
  const auto& b = coords_[static_cast<std::size_t>(tri[1])];
  const auto& c = coords_[static_cast<std::size_t>(tri[2])];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

std::shared_ptr<const FeSpace> build_space(int nodes_per_side) {
  UnitSquareMesh mesh(nodes_per_side);
  const auto n = mesh.num_nodes();

  std::vector<Eigen::Triplet<double>> mass_t;
  std::vector<Eigen::Triplet<double>> stiff_t;
  mass_t.reserve(9 * mesh.triangles().size());
  stiff_t.reserve(9 * mesh.triangles().size());

  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double area = mesh.signed_area(t);
    PODOCP_REQUIRE(area > 0.0, ErrorKind::InvalidArgument, "mesh triangle is not positively oriented");

    // ∇φᵢ = (y_{i+1} − y_{i+2}, x_{i+2} − x_{i+1}) / (2·area), exact for P1.
    std::array<std::array<double, 2>, 3> grad{};
    for (int i = 0; i < 3; ++i) {
      const auto& p1 = mesh.coords()[static_cast<std::size_t>(tri[(i + 1) % 3])];
      const auto& p2 = mesh.coords()[static_cast<std::size_t>(tri[(i + 2) % 3])];
      grad[i] = {(p1[1] - p2[1]) / (2.0 * area), (p2[0] - p1[0]) / (2.0 * area)};
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double m = area / 12.0 * (i == j ? 2.0 : 1.0);
        const double k = area * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
        mass_t.emplace_back(tri[i], tri[j], m);
        stiff_t.emplace_back(tri[i], tri[j], k);
      }
    }
  }

  SparseMatrix mass(n, n);
  SparseMatrix stiff(n, n);
  mass.setFromTriplets(mass_t.begin(), mass_t.end());
  stiff.setFromTriplets(stiff_t.begin(), stiff_t.end());
  SparseMatrix h1 = mass + stiff;

  SparseSymMatrix mass_sym(mass);
  return std::make_shared<const FeSpace>(FeSpace{
      std::move(mesh), mass_sym, SparseSymMatrix(std::move(stiff)), SparseSymMatrix(std::move(h1)), mass_sym});
}

Vector interpolate(const FeSpace& space, const std::function<double(double, double)>& f) {
  Vector v(space.dim());
  const auto& coords = space.mesh.coords();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double value = f(coords[i][0], coords[i][1]);
    PODOCP_REQUIRE(std::isfinite(value), ErrorKind::NonFiniteValue,
                   "interpolated function is not finite at node " + std::to_string(i));
    v(static_cast<Eigen::Index>(i)) = value;
  }
  return v;
}

}  // namespace podocp
