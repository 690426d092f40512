#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "svgscatter/svg_model.hpp"

namespace test {

namespace fs = std::filesystem;

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("svgscatter-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++) + "-" +
             std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string svg(const std::string& body, double w = 600, double h = 450) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\">" << body << "</svg>";
  return s.str();
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool coin(double p = 0.5) { return uniform(0, 1) < p; }
};

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close(const svgscatter::Point& a, const svgscatter::Point& b, double tol) {
  return close(a.x(), b.x(), tol) && close(a.y(), b.y(), tol);
}

/// Relative error with a floor on the denominator.
inline double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max(std::abs(want), scale);
}

}  // namespace test
