#pragma once

#include <string>
#include <vector>

#include "gaf/charts.hpp"
#include "gaf/grid.hpp"

namespace gaf {

enum class Level { N, S, SL, GLPlus, GL, GAPlus, GA };

std::string to_string(Level level);
Level parse_level(const std::string& s);
// GL and GA carry two components.
bool has_minus_component(Level level);

struct AxisGrid {
  int count = 64;
  double min = -8.0;
  double max = 8.0;
  int freq_count = 64;
  double freq_max = 8.0;
};

struct CompactGrid {
  int nodes = 64;       // SO(2) nodes, or alpha / gamma nodes for SO(3)
  int band_limit = 8;
  int beta_nodes = 0;   // SO(3) Gauss-Legendre nodes; 0 means band_limit + 1
};

// Spatial and spectral grids of one level; coordinates follow the NAK chart.
struct LevelGrid {
  Level level = Level::GAPlus;
  int n = 2;
  AxisGrid translation, scale, diagonal, nilpotent;
  CompactGrid compact;

  Chart chart() const;
  const AxisGrid& grid_for(AxisKind kind) const;
  AxisGrid& grid_for(AxisKind kind);
  std::vector<Axis> spatial_axes() const;
  std::vector<Axis> spectral_axes() const;
  Axis spatial_axis(AxisKind kind, const std::string& label) const;
  Axis spectral_axis(AxisKind spatial_kind, const std::string& spatial_label) const;
  std::string descriptor() const;
};

std::string spectral_label(const std::string& spatial_label, AxisKind kind);

}  // namespace gaf
