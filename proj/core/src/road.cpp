#include "revsim/road.hpp"

#include <array>

namespace revsim {

RoadNetwork build_network(int rows, int cols, double block_len_m) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("grid needs rows >= 2 and cols >= 2");
  if (!(block_len_m > 0.0)) throw std::invalid_argument("block length must be positive");
  return RoadNetwork{rows, cols, block_len_m};
}

double pos_x(const Position& p, const RoadNetwork& net) {
  double x = p.j * net.block_len_m;
  if (p.horizontal()) x += p.along;
  return x;
}

double pos_y(const Position& p, const RoadNetwork& net) {
  double y = p.i * net.block_len_m;
  if (!p.horizontal()) y += p.along;
  return y;
}

int cell_of(const Position& p, const RoadNetwork& net) {
  int cr = p.i;
  int cc = p.j;
  if (p.horizontal()) {
    if (p.along >= net.block_len_m) ++cc;  // exactly at the east end
    if (cr > net.cell_rows() - 1) cr = net.cell_rows() - 1;
  } else {
    if (p.along >= net.block_len_m) ++cr;
    if (cc > net.cell_cols() - 1) cc = net.cell_cols() - 1;
  }
  if (cr > net.cell_rows() - 1) cr = net.cell_rows() - 1;
  if (cc > net.cell_cols() - 1) cc = net.cell_cols() - 1;
  return cell_index(net, cr, cc);
}

Position random_position(const RoadNetwork& net, Rng& rng) {
  const int horizontal_segments = net.rows * (net.cols - 1);
  const int total = net.segment_count();
  const int seg = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(total)));
  Position p;
  if (seg < horizontal_segments) {
    p.i = static_cast<std::int16_t>(seg / (net.cols - 1));
    p.j = static_cast<std::int16_t>(seg % (net.cols - 1));
    p.heading = bernoulli(rng, 0.5) ? Heading::East : Heading::West;
  } else {
    const int v = seg - horizontal_segments;
    p.i = static_cast<std::int16_t>(v / net.cols);
    p.j = static_cast<std::int16_t>(v % net.cols);
    p.heading = bernoulli(rng, 0.5) ? Heading::South : Heading::North;
  }
  p.along = static_cast<float>(uniform01(rng) * net.block_len_m);
  return p;
}

namespace {

// Intersection the vehicle is about to reach, given its segment and heading.
void target_intersection(const Position& p, int& ti, int& tj) {
  ti = p.i;
  tj = p.j;
  switch (p.heading) {
    case Heading::East: tj += 1; break;
    case Heading::West: break;
    case Heading::South: ti += 1; break;
    case Heading::North: break;
  }
}

// Distance left on the current segment before that intersection.
double distance_to_intersection(const Position& p, const RoadNetwork& net) {
  const bool forward = p.heading == Heading::East || p.heading == Heading::South;
  return forward ? net.block_len_m - p.along : p.along;
}

Heading pick_heading(int ti, int tj, const RoadNetwork& net, Heading incoming, Rng& rng) {
  std::array<Heading, 4> options{};
  int n = 0;
  const Heading back = reverse(incoming);
  if (ti > 0 && Heading::North != back) options[n++] = Heading::North;
  if (tj < net.cols - 1 && Heading::East != back) options[n++] = Heading::East;
  if (ti < net.rows - 1 && Heading::South != back) options[n++] = Heading::South;
  if (tj > 0 && Heading::West != back) options[n++] = Heading::West;
  if (n == 0) return back;  // dead end; cannot happen on a rectangular grid
  if (n == 1) return options[0];
  return options[uniform_index(rng, static_cast<std::size_t>(n))];
}

// Place a vehicle leaving intersection (ti, tj) with `heading`, `along` meters in.
Position depart(int ti, int tj, Heading heading, double along) {
  Position p;
  p.heading = heading;
  switch (heading) {
    case Heading::East:
      p.i = static_cast<std::int16_t>(ti);
      p.j = static_cast<std::int16_t>(tj);
      p.along = static_cast<float>(along);
      break;
    case Heading::West:
      p.i = static_cast<std::int16_t>(ti);
      p.j = static_cast<std::int16_t>(tj - 1);
      p.along = static_cast<float>(along);  // distance from west end counts down
      break;
    case Heading::South:
      p.i = static_cast<std::int16_t>(ti);
      p.j = static_cast<std::int16_t>(tj);
      p.along = static_cast<float>(along);
      break;
    case Heading::North:
      p.i = static_cast<std::int16_t>(ti - 1);
      p.j = static_cast<std::int16_t>(tj);
      p.along = static_cast<float>(along);
      break;
  }
  return p;
}

}  // namespace

Position advance(Position p, const RoadNetwork& net, double distance_m, Rng& rng) {
  if (distance_m < 0.0) throw std::invalid_argument("advance distance must be nonnegative");
  double left = distance_m;
  while (left > 0.0) {
    const double to_node = distance_to_intersection(p, net);
    if (left < to_node) {
      const bool forward = p.heading == Heading::East || p.heading == Heading::South;
      p.along = static_cast<float>(forward ? p.along + left : p.along - left);
      return p;
    }
    left -= to_node;
    int ti, tj;
    target_intersection(p, ti, tj);
    const Heading h = pick_heading(ti, tj, net, p.heading, rng);
    // West/North departures measure `along` from the far end of the new segment.
    const double start = (h == Heading::West || h == Heading::North) ? net.block_len_m : 0.0;
    p = depart(ti, tj, h, start);
    if (left == 0.0) return p;
    // Move off the intersection by the remainder (falls through the loop).
    const bool forward = h == Heading::East || h == Heading::South;
    const double step = std::min(left, net.block_len_m);
    p.along = static_cast<float>(forward ? step : net.block_len_m - step);
    left -= step;
  }
  return p;
}

}  // namespace revsim
