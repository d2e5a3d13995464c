#pragma once

#include <cstdint>
#include <stdexcept>

#include "revsim/rng.hpp"

namespace revsim {

enum class Heading : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline Heading reverse(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 2) & 3);
}

// Manhattan-style grid: rows x cols intersections joined by road segments of
// length block_len_m. Intersection (i, j) sits at x = j*block_len, y = i*block_len.
struct RoadNetwork {
  int rows = 0;
  int cols = 0;
  double block_len_m = 0.0;

  int intersection_count() const { return rows * cols; }
  // Horizontal segments: rows*(cols-1); vertical: (rows-1)*cols.
  int segment_count() const { return rows * (cols - 1) + (rows - 1) * cols; }

  int cell_rows() const { return rows - 1; }
  int cell_cols() const { return cols - 1; }
  int cell_count() const { return cell_rows() * cell_cols(); }
};

RoadNetwork build_network(int rows, int cols, double block_len_m);

// A position on a road segment. The segment is identified by the intersection
// (i, j) at its west (horizontal) or north (vertical) end; `along` is the
// distance in meters from that end, in [0, block_len]. `heading` is the travel
// direction and agrees with the segment orientation.
struct Position {
  std::int16_t i = 0;
  std::int16_t j = 0;
  float along = 0.0f;
  Heading heading = Heading::East;

  bool horizontal() const { return heading == Heading::East || heading == Heading::West; }
};

double pos_x(const Position& p, const RoadNetwork& net);
double pos_y(const Position& p, const RoadNetwork& net);

// Block cell containing the position; positions on shared gridlines are
// assigned to the cell they bound on the south/east side (clamped at edges),
// so every position maps to exactly one of (rows-1)*(cols-1) cells.
int cell_of(const Position& p, const RoadNetwork& net);
inline int cell_index(const RoadNetwork& net, int cr, int cc) {
  return cr * net.cell_cols() + cc;
}

// Cell a vehicle occupies for the whole traversal of its current segment,
// independent of `along`. Segments on the last gridline map to the cell they
// bound on the north/west side.
inline int traversal_cell(const Position& p, const RoadNetwork& net) {
  int cr, cc;
  if (p.horizontal()) {
    cr = p.i < net.rows - 1 ? p.i : net.rows - 2;
    cc = p.j;
  } else {
    cr = p.i;
    cc = p.j < net.cols - 1 ? p.j : net.cols - 2;
  }
  return cell_index(net, cr, cc);
}

Position random_position(const RoadNetwork& net, Rng& rng);

// Advance `distance_m` along the grid. At an intersection the next heading is
// drawn uniformly from the available directions excluding the reverse of the
// current one; the reverse is taken only when it is the sole option (never the
// case on a rectangular grid with rows, cols >= 2).
Position advance(Position p, const RoadNetwork& net, double distance_m, Rng& rng);

// One simulation step of a vehicle's kinematics: distance = speed * tick.
inline Position step_vehicle(const Position& p, const RoadNetwork& net,
                             double speed_mps, double tick_s, Rng& rng) {
  return advance(p, net, speed_mps * tick_s, rng);
}

}  // namespace revsim
