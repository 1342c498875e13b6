#include "nematic/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace nematic {

namespace fs = std::filesystem;

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void io_fail(const fs::path& path, const char* what) {
  throw std::runtime_error(std::string(what) + ": " + path.string());
}

}  // namespace

void write_energy_csv(const std::vector<EnergyRecord>& history,
                      const fs::path& path) {
  if (history.empty())
    throw std::invalid_argument("write_energy_csv: empty history");
  std::ostringstream out;
  out << "step,time,kinetic,elastic,penalty,total,grad_u_norm,w_norm,d_inf\n";
  for (const EnergyRecord& r : history) {
    out << r.step << ',' << g17(r.time) << ',' << g17(r.kinetic) << ','
        << g17(r.elastic) << ',' << g17(r.penalty) << ',' << g17(r.total)
        << ',' << g17(r.grad_u_norm) << ',' << g17(r.w_norm) << ','
        << g17(r.d_inf) << '\n';
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) io_fail(path, "cannot open for writing");
  f << out.str();
  if (!f.flush()) io_fail(path, "write failed");
}

std::vector<EnergyRecord> read_energy_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) io_fail(path, "cannot open");
  std::string line;
  if (!std::getline(f, line)) io_fail(path, "empty file");
  if (line != "step,time,kinetic,elastic,penalty,total,grad_u_norm,w_norm,d_inf")
    io_fail(path, "unexpected CSV header");
  std::vector<EnergyRecord> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    EnergyRecord r;
    double* fields[] = {&r.time,  &r.kinetic,     &r.elastic, &r.penalty,
                        &r.total, &r.grad_u_norm, &r.w_norm,  &r.d_inf};
    std::istringstream ss(line);
    std::string tok;
    if (!std::getline(ss, tok, ',')) io_fail(path, "malformed CSV row");
    r.step = std::stoi(tok);
    for (double* fld : fields) {
      if (!std::getline(ss, tok, ',')) io_fail(path, "malformed CSV row");
      *fld = std::stod(tok);
    }
    out.push_back(r);
  }
  return out;
}

void write_vtk_snapshot(const Mesh& mesh, const SimState& state,
                        const fs::path& path) {
  const int nv = mesh.n_vertices();
  const int nt = mesh.n_triangles();
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n"
      << "nematic state, step " << state.step << ", time " << g17(state.time)
      << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec2 x = mesh.vertex(v);
    out << g17(x[0]) << ' ' << g17(x[1]) << " 0\n";
  }
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (int e = 0; e < nt; ++e) {
    const int* t = mesh.tri(e);
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  out << "CELL_TYPES " << nt << '\n';
  for (int e = 0; e < nt; ++e) out << "5\n";

  out << "POINT_DATA " << nv << '\n';
  out << "VECTORS director double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec2 d = state.d.at(v);
    out << g17(d[0]) << ' ' << g17(d[1]) << " 0\n";
  }
  out << "VECTORS velocity_tilde double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec2 u = state.u_tilde.at(v);
    out << g17(u[0]) << ' ' << g17(u[1]) << " 0\n";
  }
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << g17(state.p.values[v]) << '\n';

  out << "CELL_DATA " << nt << '\n';
  out << "VECTORS w double\n";
  for (int e = 0; e < nt; ++e) {
    const Vec2 w = state.w.at(e);
    out << g17(w[0]) << ' ' << g17(w[1]) << " 0\n";
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) io_fail(path, "cannot open for writing");
  f << out.str();
  if (!f.flush()) io_fail(path, "write failed");
}

void write_json(const std::string& json_text, const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) io_fail(path, "cannot open for writing");
  f << json_text;
  if (json_text.empty() || json_text.back() != '\n') f << '\n';
  if (!f.flush()) io_fail(path, "write failed");
}

OutputLock::OutputLock(const fs::path& dir) : dir_(dir) {
  fs::create_directories(dir_);
  lock_path_ = dir_ / ".lock";
  const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST)
      throw std::runtime_error("output directory is locked by another writer: " +
                               dir_.string());
    io_fail(lock_path_, "cannot create lock file");
  }
  char pid[32];
  std::snprintf(pid, sizeof pid, "%ld\n", static_cast<long>(::getpid()));
  (void)!::write(fd, pid, std::strlen(pid));
  ::close(fd);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(lock_path_, ec);
}

}  // namespace nematic
