#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nematic/diagnostics.hpp"
#include "nematic/mesh.hpp"
#include "nematic/scheme.hpp"

namespace nematic {

/// Writes the energy history as CSV: fixed header, one row per record,
/// 17 significant digits, LF line endings. Throws on empty history or I/O
/// failure.
void write_energy_csv(const std::vector<EnergyRecord>& history,
                      const std::filesystem::path& path);

/// Parses a file written by write_energy_csv. Round-trips values exactly.
std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path);

/// Legacy ASCII VTK unstructured grid: POINTS, triangle CELLS, point-data
/// vectors "director" and "velocity_tilde", point-data scalar "pressure",
/// cell-data vector "w".
void write_vtk_snapshot(const Mesh& mesh, const SimState& state,
                        const std::filesystem::path& path);

/// Writes pretty-printed JSON followed by a newline.
void write_json(const std::string& json_text, const std::filesystem::path& path);

/// Exclusive claim on an output directory, dropped on destruction. Creates
/// the directory if needed; throws if another writer holds the lock.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::filesystem::path lock_path_;
};

}  // namespace nematic
