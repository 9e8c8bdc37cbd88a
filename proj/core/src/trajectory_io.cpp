#include <chlab/trajectory_io.hpp>

#include "text_format.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chlab {
namespace {

template <typename T>
void put(std::string& out, T value) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::runtime_error("trajectory file is truncated");
  char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  pos += sizeof(T);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void write_text(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  using detail::format_double;
  const GridSpec& g = traj.grid();
  std::string out = "t,x,u\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::string t = format_double(traj.times()[k]);
    const Field& u = traj.states()[k];
    for (std::size_t i = 0; i < u.size(); ++i) {
      out += t + ',' + format_double(g.x(i)) + ',' + format_double(u[i]) + '\n';
    }
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text(path, trajectory_csv(traj));
}

std::string trajectory_binary(const Trajectory& traj) {
  const GridSpec& g = traj.grid();
  std::string out(kTrajectoryMagic, sizeof kTrajectoryMagic);
  put<std::uint32_t>(out, kTrajectoryVersion);
  put<std::uint32_t>(out, 0);
  put<double>(out, g.half_length());
  put<std::uint64_t>(out, g.size());
  put<std::uint64_t>(out, traj.size());
  for (double t : traj.times()) put<double>(out, t);
  for (const Field& u : traj.states()) {
    for (double v : u.samples()) put<double>(out, v);
  }
  return out;
}

void write_trajectory_binary(const Trajectory& traj, const std::filesystem::path& path) {
  write_text(path, trajectory_binary(traj));
}

Trajectory parse_trajectory_binary(const std::string& bytes) {
  if (bytes.size() < sizeof kTrajectoryMagic ||
      std::memcmp(bytes.data(), kTrajectoryMagic, sizeof kTrajectoryMagic) != 0) {
    throw std::runtime_error("not a trajectory file (bad magic)");
  }
  std::size_t pos = sizeof kTrajectoryMagic;
  const auto version = take<std::uint32_t>(bytes, pos);
  if (version != kTrajectoryVersion) {
    throw std::runtime_error("unsupported trajectory format version " + std::to_string(version));
  }
  (void)take<std::uint32_t>(bytes, pos);
  const auto L = take<double>(bytes, pos);
  const auto N = take<std::uint64_t>(bytes, pos);
  const auto count = take<std::uint64_t>(bytes, pos);
  if (count == 0) throw std::runtime_error("trajectory file holds no snapshots");
  if (N > (bytes.size() / 8) || count > bytes.size() / 8) {
    throw std::runtime_error("trajectory file is truncated");
  }
  const GridSpec grid(L, static_cast<std::size_t>(N));
  std::vector<double> times(count);
  for (auto& t : times) t = take<double>(bytes, pos);
  std::vector<Field> states;
  states.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<double> samples(N);
    for (auto& v : samples) v = take<double>(bytes, pos);
    states.emplace_back(grid, std::move(samples));
  }
  if (pos != bytes.size()) throw std::runtime_error("trailing bytes after trajectory data");
  return {std::move(times), std::move(states)};
}

Trajectory read_trajectory_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trajectory_binary(ss.str());
}

void write_field_binary(const Field& u, const std::filesystem::path& path) {
  write_trajectory_binary(Trajectory({0.0}, {u}), path);
}

}  // namespace chlab
