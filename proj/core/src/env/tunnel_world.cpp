#include "aags/env/tunnel_world.hpp"

#include <sstream>
#include <stdexcept>

namespace aags::env {
namespace {

constexpr Cell kMoves[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};

}  // namespace

TunnelLayout TunnelLayout::parse(std::string_view text) {
  TunnelLayout layout;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    layout.rows.push_back(line);
  }
  if (layout.rows.empty()) throw std::invalid_argument("tunnel layout is empty");
  layout.height = static_cast<int>(layout.rows.size());
  layout.width = static_cast<int>(layout.rows.front().size());
  int starts = 0;
  int goals = 0;
  for (int y = 0; y < layout.height; ++y) {
    const std::string& row = layout.rows[static_cast<std::size_t>(y)];
    if (static_cast<int>(row.size()) != layout.width) {
      throw std::invalid_argument("tunnel layout rows must have equal length");
    }
    for (int x = 0; x < layout.width; ++x) {
      switch (row[static_cast<std::size_t>(x)]) {
        case 's':
          layout.start = {x, y};
          ++starts;
          break;
        case 'g':
          layout.goal = {x, y};
          ++goals;
          break;
        case '#':
        case '.':
        case 'r':
          break;
        default:
          throw std::invalid_argument(std::string("tunnel layout has unknown cell '") +
                                      row[static_cast<std::size_t>(x)] + "'");
      }
    }
  }
  if (starts != 1 || goals != 1) {
    throw std::invalid_argument("tunnel layout needs exactly one 's' and one 'g'");
  }
  return layout;
}

bool TunnelLayout::free(Cell c) const {
  return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height && at(c) != '#';
}

std::string TunnelLayout::to_string() const {
  std::string out;
  for (const std::string& row : rows) out += row + '\n';
  return out;
}

TunnelLayout make_tunnel_layout(int distance, int corridor_width) {
  if (distance < 1) throw std::invalid_argument("tunnel goal distance must be >= 1");
  if (corridor_width < 1) throw std::invalid_argument("tunnel corridor width must be >= 1");
  constexpr int kPocket = 3;   // columns of small-reward cells at the west end
  constexpr int kStartX = kPocket + 3;
  const int goal_x = kStartX + distance;
  const int width = goal_x + 2;
  const int height = corridor_width + 2;
  const int mid = 1 + corridor_width / 2;

  std::string text;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      char c = '.';
      if (y == 0 || y == height - 1 || x == 0 || x == width - 1) {
        c = '#';
      } else if (x <= kPocket) {
        c = 'r';
      } else if (x == kStartX && y == mid) {
        c = 's';
      } else if (x == goal_x && y == mid) {
        c = 'g';
      }
      text += c;
    }
    text += '\n';
  }
  return TunnelLayout::parse(text);
}

void TunnelWorldConfig::validate() const {
  if (layout.rows.empty()) throw std::invalid_argument("tunnel layout is empty");
  if (!(r_small >= 0.0 && r_large > 0.0)) throw std::invalid_argument("tunnel rewards must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  // Discounted small-reward income must stay below the large reward.
  if (!(r_small / (1.0 - gamma) < r_large)) {
    throw std::invalid_argument("tunnel r_small / (1 - gamma) must be below r_large");
  }
}

TunnelWorld::TunnelWorld(TunnelWorldConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::unique_ptr<Environment> TunnelWorld::clone() const {
  return std::make_unique<TunnelWorld>(*this);
}

StateId TunnelWorld::encode(Cell c) const {
  return StateId{static_cast<std::uint64_t>(c.y) * static_cast<std::uint64_t>(config_.layout.width) +
                 static_cast<std::uint64_t>(c.x)};
}

Cell TunnelWorld::decode(StateId s) const {
  const auto w = static_cast<std::uint64_t>(config_.layout.width);
  return {static_cast<int>(s.value % w), static_cast<int>(s.value / w)};
}

Observation TunnelWorld::sample(StateId s, ActionId a, Rng&) const {
  check_action(s, a);
  const Cell from = decode(s);
  if (from == config_.layout.goal) return {s, config_.r_large, false};
  const Cell moved{from.x + kMoves[a.value].x, from.y + kMoves[a.value].y};
  const Cell to = config_.layout.free(moved) ? moved : from;
  const char tile = config_.layout.at(to);
  if (tile == 'g') return {encode(to), config_.r_large, false};
  return {encode(to), tile == 'r' ? config_.r_small : 0.0, false};
}

}  // namespace aags::env
