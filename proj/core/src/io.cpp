#include "photondm/io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <utility>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

std::string temp_sibling_path(const std::string& path) {
  static std::atomic<unsigned> counter{0};
  return path + ".tmp." + std::to_string(counter.fetch_add(1));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest decimal form that parses back to the identical value.
  char buffer[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, v);
    if (std::strtod(buffer, nullptr) == v) break;
  }
  return buffer;
}

std::string format_ratio(const AsymmetryRatio& r) {
  if (r.unbounded) return "inf";
  return format_double(r.value);
}

struct AtomicFileWriter::Impl {
  std::string final_path;
  std::string temp_path;
  std::ofstream out;
  bool committed = false;
};

AtomicFileWriter::AtomicFileWriter(std::string path) : impl_(new Impl) {
  impl_->final_path = std::move(path);
  impl_->temp_path = temp_sibling_path(impl_->final_path);
  impl_->out.open(impl_->temp_path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) {
    const std::string message = "cannot open " + impl_->temp_path + " for writing";
    delete impl_;
    impl_ = nullptr;
    throw io_error(message);
  }
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!impl_) return;
  if (!impl_->committed) {
    impl_->out.close();
    std::error_code ignored;
    std::filesystem::remove(impl_->temp_path, ignored);
  }
  delete impl_;
}

std::ostream& AtomicFileWriter::stream() { return impl_->out; }

void AtomicFileWriter::commit() {
  impl_->out.flush();
  if (!impl_->out) {
    throw io_error("write to " + impl_->temp_path + " failed");
  }
  impl_->out.close();
  std::error_code ec;
  std::filesystem::rename(impl_->temp_path, impl_->final_path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(impl_->temp_path, ignored);
    throw io_error("cannot move output into place at " + impl_->final_path + ": " +
                   ec.message());
  }
  impl_->committed = true;
}

void write_text_file_atomic(const std::string& path, const std::string& contents) {
  AtomicFileWriter writer(path);
  writer.stream().write(contents.data(),
                        static_cast<std::streamsize>(contents.size()));
  writer.commit();
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "p12,p21,loss,conflict,ratio\n";
  for (const SweepRow& row : rows) {
    os << format_double(row.p12) << ',' << format_double(row.p21) << ','
       << format_double(row.loss) << ',' << format_double(row.conflict) << ','
       << format_double(row.ratio) << '\n';
  }
}

void write_frontier_csv(std::ostream& os, const std::vector<FrontierRow>& rows) {
  os << "x,y_upper,y_lower\n";
  for (const FrontierRow& row : rows) {
    os << format_double(row.x) << ',' << format_ratio(row.y_upper) << ','
       << format_ratio(row.y_lower) << '\n';
  }
}

}  // namespace photondm
