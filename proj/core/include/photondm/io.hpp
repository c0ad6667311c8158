#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "photondm/feasibility.hpp"
#include "photondm/sampling.hpp"

namespace photondm {

// Round-trip decimal rendering of a double (17 significant digits). Special
// values render as the tokens "inf", "-inf" and "nan".
std::string format_double(double v);

// Like format_double, with the unbounded marker rendered as "inf".
std::string format_ratio(const AsymmetryRatio& r);

// Writes `contents` to `path` atomically: the data goes to a temporary file in
// the same directory which is then renamed over the destination, so readers
// never observe a partial file. Throws io_error on failure.
void write_text_file_atomic(const std::string& path, const std::string& contents);

// Streaming variant of the same discipline: write to `stream()`, then
// `commit()`. Destruction without commit removes the temporary file.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::string path);
  ~AtomicFileWriter();
  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream();
  void commit();

 private:
  struct Impl;
  Impl* impl_;
};

// CSV with header "p12,p21,loss,conflict,ratio".
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// One frontier sample: both branch values at a common x.
struct FrontierRow {
  double x = 0.0;
  AsymmetryRatio y_upper;
  AsymmetryRatio y_lower;
};

// CSV with header "x,y_upper,y_lower"; unbounded entries render as "inf".
void write_frontier_csv(std::ostream& os, const std::vector<FrontierRow>& rows);

}  // namespace photondm
