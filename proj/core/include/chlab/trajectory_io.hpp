#pragma once

// Trajectory export: CSV (t, x, u) and a compact little-endian binary
// format described in docs/binary_format.md.

#include <chlab/evolution.hpp>

#include <cstdint>

#include <filesystem>
#include <string>

namespace chlab {

inline constexpr char kTrajectoryMagic[8] = {'C', 'H', 'L', 'A', 'B', 'T', 'R', 'J'};
inline constexpr std::uint32_t kTrajectoryVersion = 1;

/// Header `t,x,u`, one row per (time, grid point).
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

std::string trajectory_binary(const Trajectory& traj);
void write_trajectory_binary(const Trajectory& traj, const std::filesystem::path& path);

/// Throws std::runtime_error on bad magic, unknown version or truncation.
Trajectory parse_trajectory_binary(const std::string& bytes);
Trajectory read_trajectory_binary(const std::filesystem::path& path);

/// Single-snapshot file at t = 0.
void write_field_binary(const Field& u, const std::filesystem::path& path);

}  // namespace chlab
