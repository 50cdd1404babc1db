#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracsob/error.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {
namespace {

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "not a number: '" + cell + "'");
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const GridFunction& f) {
  out << std::setprecision(17);
  out << "# support," << f.support().lo << ',' << f.support().hi << '\n';
  out << "x,value\n";
  for (std::size_t j = 0; j < f.size(); ++j) out << f.x(j) << ',' << f[j] << '\n';
}

void write_csv(std::ostream& out, const SpectralFunction& F) {
  out << std::setprecision(17);
  out << "# d_omega," << F.d_omega() << '\n';
  out << "omega,re,im\n";
  for (std::size_t k = 0; k < F.size(); ++k)
    out << F.omega(k) << ',' << F[k].real() << ',' << F[k].imag() << '\n';
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  std::vector<double> xs, vs;
  bool have_support = false;
  Interval support;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# support,", 0) == 0) {
        const auto v = split_numbers(line.substr(10));
        require(v.size() == 2, Errc::parse_error, "bad support line");
        support = {v[0], v[1]};
        have_support = true;
      }
      continue;
    }
    if (!header) {
      require(line == "x,value", Errc::parse_error, "expected header 'x,value'");
      header = true;
      continue;
    }
    const auto v = split_numbers(line);
    require(v.size() == 2, Errc::parse_error, "expected two columns: " + line);
    xs.push_back(v[0]);
    vs.push_back(v[1]);
  }
  require(xs.size() >= 2, Errc::parse_error, "grid CSV needs at least two rows");
  if (!have_support) {
    const double dx = xs[1] - xs[0];
    support = {xs[0], xs[0] + dx * static_cast<double>(xs.size())};
  }
  return GridFunction(support, std::move(vs));
}

SpectralFunction read_spectral_csv(std::istream& in) {
  std::string line;
  std::vector<double> ws;
  std::vector<complex> vs;
  double d_omega = 0.0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# d_omega,", 0) == 0) d_omega = split_numbers(line.substr(10)).at(0);
      continue;
    }
    if (!header) {
      require(line == "omega,re,im", Errc::parse_error, "expected header 'omega,re,im'");
      header = true;
      continue;
    }
    const auto v = split_numbers(line);
    require(v.size() == 3, Errc::parse_error, "expected three columns: " + line);
    ws.push_back(v[0]);
    vs.emplace_back(v[1], v[2]);
  }
  require(ws.size() >= 2, Errc::parse_error, "spectral CSV needs at least two rows");
  if (d_omega == 0.0) d_omega = ws[1] - ws[0];
  return SpectralFunction(d_omega, std::move(vs));
}

}  // namespace fracsob
