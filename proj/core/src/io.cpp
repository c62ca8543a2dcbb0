#include "hsr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsr/error.hpp"

namespace hsr {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& text, const std::filesystem::path& file, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    fail_io(file.string() + ":" + std::to_string(line) + ": malformed number '" + text + "'");
  return v;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& file, std::size_t columns) {
  std::ifstream in(file);
  if (!in) fail_io("cannot open " + file.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) fail_io(file.string() + ": empty file");
  table.header = split_csv_line(line);
  if (table.header.size() != columns)
    fail_io(file.string() + ": expected " + std::to_string(columns) + " columns in header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != columns)
      fail_io(file.string() + ":" + std::to_string(lineno) + ": wrong column count");
    std::vector<double> row(columns);
    for (std::size_t c = 0; c < columns; ++c) row[c] = parse_double(cells[c], file, lineno);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) fail_io("cannot write " + file.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) fail_io("write failed for " + file.string());
}

UniformGrid grid_from_abscissae(const std::vector<double>& xs, const std::filesystem::path& file) {
  if (xs.size() < 2) fail_io(file.string() + ": need at least 2 rows");
  const UniformGrid grid(xs.front(), xs.back(), xs.size());
  const double tol = 1e-9 * std::max(1.0, grid.b() - grid.a());
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (std::abs(xs[k] - grid.node(k)) > tol) fail_io(file.string() + ": abscissae are not uniform");
  return grid;
}

json function_json(const SampledFunction1D& f, bool real_only, const std::string& axis = "s") {
  json j;
  std::vector<double> s(f.size()), re(f.size()), im(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    s[k] = f.grid().node(k);
    re[k] = f[k].real();
    im[k] = f[k].imag();
  }
  j[axis] = s;
  j["re"] = re;
  if (!real_only) j["im"] = im;
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_function_csv(const std::filesystem::path& file, const SampledFunction1D& f,
                        const std::string& axis) {
  auto out = open_out(file);
  out << axis << ",re,im\n";
  for (std::size_t k = 0; k < f.size(); ++k)
    out << format_double(f.grid().node(k)) << ',' << format_double(f[k].real()) << ','
        << format_double(f[k].imag()) << '\n';
  finish(out, file);
}

SampledFunction1D read_function_csv(const std::filesystem::path& file) {
  const CsvTable t = read_csv(file, 3);
  if (t.header[1] != "re" || t.header[2] != "im") fail_io(file.string() + ": expected header <axis>,re,im");
  std::vector<double> xs;
  std::vector<cdouble> v;
  for (const auto& row : t.rows) {
    xs.push_back(row[0]);
    v.emplace_back(row[1], row[2]);
  }
  return SampledFunction1D(grid_from_abscissae(xs, file), std::move(v));
}

void write_residual_curve_csv(const std::filesystem::path& file, const std::vector<std::size_t>& ms,
                              const std::vector<double>& residuals, double naive_residual) {
  require(ms.size() == residuals.size(), "residual curve length mismatch");
  auto out = open_out(file);
  out << "m,residual,naive\n";
  for (std::size_t i = 0; i < ms.size(); ++i)
    out << ms[i] << ',' << format_double(residuals[i]) << ',' << format_double(naive_residual)
        << '\n';
  finish(out, file);
}

void write_sinogram_csv(const std::filesystem::path& file, const Sinogram2D& sino) {
  auto out = open_out(file);
  out << "y,theta,re,im\n";
  for (std::size_t a = 0; a < sino.n_angles(); ++a)
    for (std::size_t k = 0; k < sino.y_grid.size(); ++k) {
      const cdouble v = sino.at(a, k);
      out << format_double(sino.y_grid.node(k)) << ',' << format_double(sino.thetas[a]) << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  finish(out, file);
}

Sinogram2D read_sinogram_csv(const std::filesystem::path& file) {
  const CsvTable t = read_csv(file, 4);
  if (t.header != std::vector<std::string>{"y", "theta", "re", "im"})
    fail_io(file.string() + ": expected header y,theta,re,im");
  if (t.rows.empty()) fail_io(file.string() + ": no rows");
  std::size_t n_rad = 0;
  while (n_rad < t.rows.size() && t.rows[n_rad][1] == t.rows[0][1]) ++n_rad;
  if (n_rad < 2 || t.rows.size() % n_rad != 0) fail_io(file.string() + ": ragged sinogram");
  const std::size_t n_ang = t.rows.size() / n_rad;
  std::vector<double> ys(n_rad);
  for (std::size_t k = 0; k < n_rad; ++k) ys[k] = t.rows[k][0];
  Sinogram2D sino(grid_from_abscissae(ys, file), n_ang);
  for (std::size_t a = 0; a < n_ang; ++a)
    for (std::size_t k = 0; k < n_rad; ++k) {
      const auto& row = t.rows[a * n_rad + k];
      if (row[0] != ys[k] || row[1] != t.rows[a * n_rad][1])
        fail_io(file.string() + ": sinogram rows must be row-major by angle");
      sino.at(a, k) = {row[2], row[3]};
    }
  for (std::size_t a = 0; a < n_ang; ++a) sino.thetas[a] = t.rows[a * n_rad][1];
  return sino;
}

void write_sidecar(const std::filesystem::path& file, const DataSidecar& meta) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["nu"] = meta.nu;
  j["r"] = meta.r;
  j["sigma"] = meta.sigma;
  j["n_samples"] = meta.n_samples;
  j["phantom_n"] = meta.phantom_n;
  j["noise_level"] = meta.noise_level;
  j["seed"] = meta.seed;
  j["phantom"] = meta.phantom_json.empty() ? json(nullptr) : json::parse(meta.phantom_json);
  write_text_file(file, j.dump(2) + "\n");
}

DataSidecar read_sidecar(const std::filesystem::path& file) {
  const std::string text = read_text_file(file);
  try {
    const json j = json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion)
      fail_io(file.string() + ": unsupported sidecar schema version");
    DataSidecar meta;
    meta.nu = j.at("nu").get<double>();
    meta.r = j.at("r").get<double>();
    meta.sigma = j.at("sigma").get<double>();
    meta.n_samples = j.at("n_samples").get<std::size_t>();
    meta.phantom_n = j.value("phantom_n", std::size_t{0});
    meta.noise_level = j.at("noise_level").get<double>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("phantom") && !j["phantom"].is_null()) meta.phantom_json = j["phantom"].dump();
    return meta;
  } catch (const json::exception& e) {
    fail_io(file.string() + ": malformed sidecar: " + e.what());
  }
}

std::string report_to_json(const ReconstructionReport& rep, bool real_phantom) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = to_string(rep.method);
  j["nu"] = rep.order.nu();
  j["r"] = rep.r;
  j["sigma"] = rep.sigma;
  j["c"] = rep.r * rep.sigma;
  j["auto_m"] = rep.auto_m;
  j["m_selected"] = rep.m_selected ? json(*rep.m_selected) : json(nullptr);
  json curve = json::array();
  for (std::size_t i = 0; i < rep.curve_m.size(); ++i)
    curve.push_back({{"m", rep.curve_m[i]}, {"residual", rep.residual_curve[i]}});
  j["residual_curve"] = curve;
  j["err_rec"] = rep.err_rec;
  j["err_naive"] = rep.err_naive;
  j["runtime_ms"] = rep.runtime_ms;
  j["seed"] = rep.seed;
  j["noise_level"] = rep.noise_level;
  j["real_part_only"] = real_phantom;
  j["f_rec"] = function_json(rep.f_rec, real_phantom);
  j["f_naive"] = function_json(rep.f_naive, real_phantom);
  return j.dump(2) + "\n";
}

std::string function_to_json(const SampledFunction1D& f, const std::string& axis) {
  json j = function_json(f, false, axis);
  j["schema_version"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

void write_plot_svg(const std::filesystem::path& file, const std::optional<SampledFunction1D>& truth,
                    const SampledFunction1D& f_rec, const SampledFunction1D& f_naive,
                    const std::string& title) {
  constexpr double width = 640, height = 400, margin = 48;
  double lo = 0.0, hi = 0.0;
  auto extend = [&](const SampledFunction1D& f) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      lo = std::min(lo, f[k].real());
      hi = std::max(hi, f[k].real());
    }
  };
  if (truth) extend(*truth);
  extend(f_rec);
  extend(f_naive);
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double s0 = f_rec.grid().a(), s1 = f_rec.grid().b();
  auto px = [&](double s) { return margin + (s - s0) / (s1 - s0) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - (v - lo) / (hi - lo) * (height - 2 * margin); };
  auto polyline = [&](const SampledFunction1D& f, const std::string& style) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t k = 0; k < f.size(); ++k)
      os << px(f.grid().node(k)) << ',' << py(f[k].real()) << ' ';
    os << "\"/>\n";
    return os.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << title << "</text>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin << "\" y2=\""
      << py(0) << "\" stroke=\"#999\"/>\n";
  if (truth) svg << polyline(*truth, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"2,3\"");
  svg << polyline(f_naive, "stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"8,5\"");
  svg << polyline(f_rec, "stroke=\"#1f4e9c\" stroke-width=\"3\"");
  svg << "<text x=\"" << margin << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\">dotted: preimage, bold: PSWF, dashed: naive</text>\n";
  svg << "</svg>\n";
  write_text_file(file, svg.str());
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
  auto out = open_out(file);
  out << text;
  finish(out, file);
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail_io("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hsr
