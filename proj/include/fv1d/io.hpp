#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fv1d/fvcore.hpp"

namespace fv1d::io {

inline constexpr const char* kCsvSchema = "# fv1d-csv-v1";

/// Scientific notation with 12 significant digits.
std::string sci(double v);

/// Writes to `path` through a sibling temporary and a rename, so readers never see a partial file.
void atomic_write(const std::string& path, const std::string& content);

/// atomic_write when `path` is non-empty, else the stream.
void emit(const std::string& path, const std::string& content, std::ostream& fallback);

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& columns);
    CsvWriter& row(const std::vector<std::string>& cells);
    const std::string& str() const { return buf_; }

private:
    std::size_t width_;
    std::string buf_;
};

/// x,psi_s_re,psi_s_im,psi1_re,psi1_im,psi2_re,psi2_im,rho,f,ratio
std::string wavefunction_csv(const WaveFunction& wf, const SpinorField& spinor,
                             const std::vector<std::optional<double>>& ratio);

}  // namespace fv1d::io
