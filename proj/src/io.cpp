#include "fv1d/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <unistd.h>

#include "fv1d/error.hpp"

namespace fv1d::io {

std::string sci(double v) {
    if (v == 0.0) {
        v = 0.0;  // drop the sign of negative zero
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw Error(ErrorCode::InvalidParameter, "cannot open " + tmp.string());
        }
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(ErrorCode::InvalidParameter, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::InvalidParameter, "rename failed for " + target.string());
    }
}

void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        fallback.flush();
    } else {
        atomic_write(path, content);
    }
}

CsvWriter::CsvWriter(const std::vector<std::string>& columns) : width_(columns.size()) {
    buf_ = std::string(kCsvSchema) + "\n";
    row(columns);
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) {
        throw Error(ErrorCode::InvalidParameter, "csv: row width mismatch");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            buf_ += ',';
        }
        buf_ += cells[i];
    }
    buf_ += '\n';
    return *this;
}

std::string wavefunction_csv(const WaveFunction& wf, const SpinorField& s,
                             const std::vector<std::optional<double>>& ratio) {
    CsvWriter w({"x", "psi_s_re", "psi_s_im", "psi1_re", "psi1_im", "psi2_re", "psi2_im", "rho",
                 "f", "ratio"});
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        w.row({sci(wf.grid[i]), sci(wf.values[i].real()), sci(wf.values[i].imag()),
               sci(s.psi1[i].real()), sci(s.psi1[i].imag()), sci(s.psi2[i].real()),
               sci(s.psi2[i].imag()), sci(s.rho[i]), sci(s.f[i]),
               ratio[i] ? sci(*ratio[i]) : std::string("nan")});
    }
    return w.str();
}

}  // namespace fv1d::io
