#include "owcsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "owcsim/format.hpp"

namespace owcsim {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string drops_csv(const std::vector<DropResult>& drops) {
  std::ostringstream out;
  out << kDropsHeader << "\n";
  for (const DropResult& d : drops) {
    out << to_string(d.system) << ',' << d.n_users << ',' << d.drop_index << ',' << d.seed << ','
        << (d.failed ? "" : format_number(d.sum_rate)) << ',' << format_number(d.consumed_power)
        << ',' << (d.failed ? "" : format_number(d.cf_bits_per_joule)) << ',';

    std::string min_db, max_db;
    if (!d.failed && d.served_count() > 0) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t u = 0; u < d.served.size(); ++u) {
        if (!d.served[u]) continue;
        lo = std::min(lo, d.per_user_sinr[u]);
        hi = std::max(hi, d.per_user_sinr[u]);
      }
      min_db = format_number(10.0 * std::log10(lo));
      max_db = format_number(10.0 * std::log10(hi));
    }
    out << min_db << ',' << max_db << ',' << (d.failed ? 1 : 0) << ',';
    if (d.failed) {
      out << ",,,\n";
    } else {
      out << format_number(d.noise.thermal_var) << ',' << format_number(d.noise.preamp_var)
          << ',' << format_number(d.noise.rin_var_mean) << ','
          << format_number(d.noise.background_shot_var) << '\n';
    }
  }
  return out.str();
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << kSummaryHeader << "\n";
  for (const CellSummary& c : cells) {
    out << to_string(c.system) << ',' << c.n_users << ',' << c.n_drops << ',' << c.n_failed;
    if (c.n_ok() > 0) {
      out << ',' << format_number(c.mean_sum_rate) << ',' << format_number(c.std_sum_rate) << ','
          << format_number(c.mean_cf) << ',' << format_number(c.std_cf) << ','
          << format_number(c.mean_cf * 1e-12) << ',' << format_number(c.std_cf * 1e-12);
    } else {
      out << ",,,,,,";
    }
    out << ',' << format_number(c.consumed_power) << ','
        << (c.n_ok() > 0 ? format_number(c.mean_served) : "") << '\n';
  }
  return out.str();
}

void write_csv(const SweepResult& sweep, const fs::path& dir) {
  write_text_file(dir / "drops.csv", drops_csv(sweep.drops));
  write_text_file(dir / "summary.csv", summary_csv(sweep.cells));
}

std::string channel_csv(const ChannelMatrix& h) {
  std::ostringstream out;
  for (Eigen::Index u = 0; u < h.gains.rows(); ++u) {
    for (Eigen::Index a = 0; a < h.gains.cols(); ++a)
      out << (a ? "," : "") << format_number(h.gains(u, a));
    out << '\n';
  }
  return out.str();
}

namespace {

struct Series {
  System system;
  std::vector<double> x, y, err;
};

std::vector<Series> collect(const std::vector<CellSummary>& cells,
                            const std::function<double(const CellSummary&)>& mean,
                            const std::function<double(const CellSummary&)>& stdev) {
  std::vector<Series> series;
  for (const CellSummary& c : cells) {
    if (c.n_ok() == 0) continue;
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.system == c.system; });
    if (it == series.end()) {
      series.push_back({c.system, {}, {}, {}});
      it = series.end() - 1;
    }
    it->x.push_back(c.n_users);
    it->y.push_back(mean(c));
    it->err.push_back(stdev(c));
  }
  if (series.empty()) throw std::runtime_error("nothing to plot");
  return series;
}

double nice_step(double range, int target_ticks) {
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string render(const std::vector<Series>& series, const std::string& title,
                   const std::string& y_label) {
  constexpr double W = 640, H = 420, left = 80, right = 20, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  double x_min = INFINITY, x_max = -INFINITY, y_max = 0.0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_max = std::max(y_max, s.y[i] + s.err[i]);
    }
  if (x_max == x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  if (y_max <= 0.0) y_max = 1.0;
  const double y_step = nice_step(y_max, 5);
  y_max = std::ceil(y_max / y_step) * y_step;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return top + ph - y / y_max * ph; };
  const char* colors[] = {"#1f77b4", "#d62728"};

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
    << "</text>\n";

  // axes and ticks
  o << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
    << top + ph << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  for (double y = 0.0; y <= y_max * (1 + 1e-9); y += y_step) {
    o << "<line x1=\"" << left - 4 << "\" y1=\"" << py(y) << "\" x2=\"" << left << "\" y2=\""
      << py(y) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << left - 7 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
      << fmt_tick(y) << "</text>\n";
  }
  std::vector<double> xs;
  for (const auto& s : series) xs.insert(xs.end(), s.x.begin(), s.x.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    o << "<line x1=\"" << px(x) << "\" y1=\"" << top + ph << "\" x2=\"" << px(x) << "\" y2=\""
      << top + ph + 4 << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << px(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
      << fmt_tick(x) << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\">Number of users</text>\n"
    << "<text transform=\"translate(20," << top + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = colors[static_cast<int>(s.system) % 2];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      o << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
    o << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = px(s.x[i]);
      const double lo = py(std::max(0.0, s.y[i] - s.err[i]));
      const double hi = py(s.y[i] + s.err[i]);
      o << "<line x1=\"" << x << "\" y1=\"" << lo << "\" x2=\"" << x << "\" y2=\"" << hi
        << "\" stroke=\"" << color << "\"/>\n"
        << "<circle cx=\"" << x << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color
        << "\"/>\n";
    }
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << left + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + 36 << "\" y2=\""
      << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << left + 42 << "\" y=\"" << ly + 4 << "\">"
      << (s.system == System::Vcsel ? "VCSEL" : "LED") << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::string sum_rate_svg(const std::vector<CellSummary>& cells) {
  return render(collect(
                    cells, [](const CellSummary& c) { return c.mean_sum_rate * 1e-9; },
                    [](const CellSummary& c) { return c.std_sum_rate * 1e-9; }),
                "Achievable sum rate vs number of users", "Sum rate (Gb/s)");
}

std::string consumption_factor_svg(const std::vector<CellSummary>& cells) {
  return render(collect(
                    cells, [](const CellSummary& c) { return c.mean_cf * 1e-12; },
                    [](const CellSummary& c) { return c.std_cf * 1e-12; }),
                "Consumption factor vs number of users", "Consumption factor (Gb/mJ)");
}

PlotFiles render_plots(const std::vector<CellSummary>& cells, const fs::path& dir) {
  PlotFiles files{dir / "sum_rate_vs_users.svg", dir / "cf_vs_users.svg"};
  const std::string rate = sum_rate_svg(cells);
  const std::string cf = consumption_factor_svg(cells);
  write_text_file(files.sum_rate, rate);
  write_text_file(files.consumption_factor, cf);
  return files;
}

}  // namespace owcsim
