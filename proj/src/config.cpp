#include "owcsim/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "owcsim/error.hpp"
#include "owcsim/format.hpp"

namespace owcsim {

namespace {

enum class Kind { Number, Integer, Unsigned, Bool, Text, RateModelName, RinModeName, Users,
                  Systems, UserRange };

struct KeySpec {
  const char* name;  // section.key
  Kind kind;
};

constexpr KeySpec kSchema[] = {
    {"system.n_aps", Kind::Integer},
    {"system.users", Kind::Users},
    {"system.fec_ber_limit", Kind::Number},
    {"system.rate_model", Kind::RateModelName},

    {"room.width", Kind::Number},
    {"room.depth", Kind::Number},
    {"room.height", Kind::Number},
    {"room.receive_plane_height", Kind::Number},

    {"vcsel.n_elements", Kind::Integer},
    {"vcsel.pitch", Kind::Number},
    {"vcsel.beam_waist_w0", Kind::Number},
    {"vcsel.wavelength", Kind::Number},
    {"vcsel.lens_focal_length", Kind::Number},
    {"vcsel.vcsel_to_lens", Kind::Number},
    {"vcsel.lens_refractive_index", Kind::Number},
    {"vcsel.optical_power_per_element", Kind::Number},
    {"vcsel.electrical_power_per_element", Kind::Number},
    {"vcsel.bandwidth_hz", Kind::Number},
    {"vcsel.rin_db_per_hz", Kind::Number},

    {"led.n_emitters", Kind::Integer},
    {"led.lambertian_order_m", Kind::Number},
    {"led.optical_power_per_emitter", Kind::Number},
    {"led.electrical_power_per_emitter", Kind::Number},
    {"led.bandwidth_hz", Kind::Number},

    {"receiver.detector_area", Kind::Number},
    {"receiver.fov_half_angle", Kind::Number},
    {"receiver.responsivity_vcsel", Kind::Number},
    {"receiver.responsivity_led", Kind::Number},
    {"receiver.load_resistance", Kind::Number},
    {"receiver.tia_noise_figure_db", Kind::Number},
    {"receiver.temperature_k", Kind::Number},
    {"receiver.background_current", Kind::Number},

    {"noise.include_signal_shot", Kind::Bool},
    {"noise.rin_mode", Kind::RinModeName},

    {"run.systems", Kind::Systems},
    {"run.users", Kind::UserRange},
    {"run.drops", Kind::Integer},
    {"run.seed", Kind::Unsigned},
    {"run.output_dir", Kind::Text},
    {"run.plots", Kind::Bool},
    {"run.dump_channel", Kind::Bool},
    {"run.threads", Kind::Unsigned},
};

constexpr std::string_view kSections[] = {"system", "room",  "vcsel", "led",
                                          "receiver", "noise", "run"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string at_line(int line) { return " (line " + std::to_string(line) + ")"; }

bool parse_double(std::string_view text, double& out) {
  const std::string s(trim(text));
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

bool parse_int64(std::string_view text, long long& out) {
  const std::string s(trim(text));
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && errno == 0;
}

bool parse_uint64(std::string_view text, std::uint64_t& out) {
  const std::string s(trim(text));
  if (s.empty() || s[0] == '-') return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoull(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && errno == 0;
}

bool parse_bool(std::string_view text, bool& out) {
  const auto s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return out = true, true;
  if (s == "false" || s == "0" || s == "no") return out = false, true;
  return false;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<Vec3> parse_users(std::string_view text, const std::string& key) {
  std::vector<Vec3> users;
  if (trim(text).empty()) return users;
  for (std::string_view item : split(text, ';')) {
    const auto coords = split(item, ',');
    Vec3 v;
    if (coords.size() != 3 || !parse_double(coords[0], v.x) || !parse_double(coords[1], v.y) ||
        !parse_double(coords[2], v.z))
      throw ConfigError(key, "expected 'x, y, z; x, y, z; ...', got '" + std::string(trim(item)) +
                                 "'");
    users.push_back(v);
  }
  return users;
}

RinMode parse_rin_mode(std::string_view s) {
  s = trim(s);
  if (s == "aggregate") return RinMode::Aggregate;
  if (s == "per_element") return RinMode::PerElement;
  throw ConfigError("noise.rin_mode", "expected aggregate|per_element");
}

// Checks a value's syntax for its key. Throws with the line number.
void check_value(const KeySpec& spec, const std::string& value, int line) {
  double d;
  long long i;
  std::uint64_t u;
  bool b;
  try {
    switch (spec.kind) {
      case Kind::Number:
        if (!parse_double(value, d))
          throw ConfigError(spec.name, "cannot parse number '" + value + "'" + at_line(line));
        break;
      case Kind::Integer:
        if (!parse_int64(value, i))
          throw ConfigError(spec.name, "cannot parse integer '" + value + "'" + at_line(line));
        break;
      case Kind::Unsigned:
        if (!parse_uint64(value, u))
          throw ConfigError(spec.name,
                            "cannot parse unsigned integer '" + value + "'" + at_line(line));
        break;
      case Kind::Bool:
        if (!parse_bool(value, b))
          throw ConfigError(spec.name, "expected true|false, got '" + value + "'" + at_line(line));
        break;
      case Kind::Text:
        break;
      case Kind::RateModelName:
        parse_rate_model(value);
        break;
      case Kind::RinModeName:
        parse_rin_mode(value);
        break;
      case Kind::Users:
        parse_users(value, spec.name);
        break;
      case Kind::Systems:
        parse_systems(value);
        break;
      case Kind::UserRange:
        parse_user_range(value);
        break;
    }
  } catch (const ConfigError& e) {
    if (e.detail().find("(line ") != std::string::npos) throw;
    throw ConfigError(spec.name, e.detail() + at_line(line));
  }
}

const KeySpec* find_key(const std::string& full) {
  for (const KeySpec& k : kSchema)
    if (full == k.name) return &k;
  return nullptr;
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  const RawConfig::Entry* get(const char* key) const {
    auto it = raw_.entries.find(key);
    return it == raw_.entries.end() ? nullptr : &it->second;
  }

  void number(const char* key, double& out) const {
    if (const auto* e = get(key)) parse_double(e->value, out);
  }

  void integer(const char* key, int& out) const {
    if (const auto* e = get(key)) {
      long long v = 0;
      parse_int64(e->value, v);
      if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(key, "integer out of range" + at_line(e->line));
      out = static_cast<int>(v);
    }
  }

  void boolean(const char* key, bool& out) const {
    if (const auto* e = get(key)) parse_bool(e->value, out);
  }

 private:
  const RawConfig& raw_;
};

}  // namespace

RawConfig parse_config(std::string_view text) {
  RawConfig raw;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("", "malformed section header" + at_line(line_no));
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (std::find(std::begin(kSections), std::end(kSections), name) == std::end(kSections))
        throw ConfigError(name, "unknown section '" + name + "'" + at_line(line_no));
      section = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "malformed line, expected 'key = value'" + at_line(line_no));
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty())
      throw ConfigError(key, "key '" + key + "' outside of any section" + at_line(line_no));
    const std::string full = section + "." + key;
    const KeySpec* spec = find_key(full);
    if (!spec) throw ConfigError(full, "unknown key '" + key + "'" + at_line(line_no));
    if (raw.contains(full))
      throw ConfigError(full, "duplicate key '" + key + "'" + at_line(line_no));
    check_value(*spec, value, line_no);
    raw.entries[full] = {value, line_no};
  }
  return raw;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Scenario validate_config(const RawConfig& raw) {
  const Reader r(raw);
  Scenario s;

  r.number("room.width", s.room.width);
  r.number("room.depth", s.room.depth);
  r.number("room.height", s.room.height);
  r.number("room.receive_plane_height", s.room.receive_plane_height);

  int n_aps = 8;
  r.integer("system.n_aps", n_aps);
  if (n_aps < 1) throw ConfigError("system.n_aps", "must be >= 1");
  s.aps = default_ap_grid(s.room, n_aps);
  if (const auto* e = r.get("system.users")) s.users = parse_users(e->value, "system.users");
  r.number("system.fec_ber_limit", s.fec_ber_limit);
  if (const auto* e = r.get("system.rate_model")) s.rate_model = parse_rate_model(e->value);

  auto& v = s.vcsel;
  r.integer("vcsel.n_elements", v.n_elements);
  r.number("vcsel.pitch", v.pitch);
  r.number("vcsel.beam_waist_w0", v.beam_waist_w0);
  r.number("vcsel.wavelength", v.wavelength);
  r.number("vcsel.lens_focal_length", v.lens_focal_length);
  r.number("vcsel.vcsel_to_lens", v.vcsel_to_lens);
  r.number("vcsel.lens_refractive_index", v.lens_refractive_index);
  r.number("vcsel.optical_power_per_element", v.optical_power_per_element);
  r.number("vcsel.electrical_power_per_element", v.electrical_power_per_element);
  r.number("vcsel.bandwidth_hz", v.bandwidth_hz);
  r.number("vcsel.rin_db_per_hz", v.rin_db_per_hz);

  auto& led = s.led;
  r.integer("led.n_emitters", led.n_emitters);
  r.number("led.lambertian_order_m", led.lambertian_order_m);
  r.number("led.optical_power_per_emitter", led.optical_power_per_emitter);
  r.number("led.electrical_power_per_emitter", led.electrical_power_per_emitter);
  r.number("led.bandwidth_hz", led.bandwidth_hz);

  auto& rx = s.receiver;
  r.number("receiver.detector_area", rx.detector_area);
  r.number("receiver.fov_half_angle", rx.fov_half_angle);
  r.number("receiver.responsivity_vcsel", rx.responsivity_vcsel);
  r.number("receiver.responsivity_led", rx.responsivity_led);
  r.number("receiver.load_resistance", rx.load_resistance);
  r.number("receiver.tia_noise_figure_db", rx.tia_noise_figure_db);
  r.number("receiver.temperature_k", rx.temperature_k);
  r.number("receiver.background_current", rx.background_current);

  r.boolean("noise.include_signal_shot", s.noise.include_signal_shot);
  if (const auto* e = r.get("noise.rin_mode")) s.noise.rin_mode = parse_rin_mode(e->value);

  validate(s);
  return s;
}

RunConfig resolve_run_config(const RawConfig& raw) {
  const Reader r(raw);
  RunConfig run;
  if (const char* env = std::getenv("OWCSIM_OUT"); env && *env) run.output_dir = env;
  if (const auto* e = r.get("run.systems")) run.systems = parse_systems(e->value);
  if (const auto* e = r.get("run.users")) run.user_counts = parse_user_range(e->value);
  r.integer("run.drops", run.n_drops);
  if (run.n_drops < 1) throw ConfigError("run.drops", "must be >= 1");
  if (const auto* e = r.get("run.seed")) parse_uint64(e->value, run.base_seed);
  if (const auto* e = r.get("run.output_dir")) run.output_dir = e->value;
  r.boolean("run.plots", run.emit_plots);
  r.boolean("run.dump_channel", run.dump_channel);
  if (const auto* e = r.get("run.threads")) {
    std::uint64_t t = 0;
    parse_uint64(e->value, t);
    run.threads = static_cast<unsigned>(t);
  }
  return run;
}

std::vector<int> parse_user_range(std::string_view spec) {
  spec = trim(spec);
  std::vector<int> counts;
  auto to_int = [&](std::string_view s) {
    long long v = 0;
    if (!parse_int64(s, v) || v < 1 || v > 1'000'000)
      throw ConfigError("run.users", "bad user count '" + std::string(trim(s)) + "'");
    return static_cast<int>(v);
  };

  if (spec.find(',') != std::string_view::npos) {
    for (auto part : split(spec, ',')) counts.push_back(to_int(part));
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i] <= counts[i - 1])
        throw ConfigError("run.users", "user counts must be strictly ascending");
    return counts;
  }

  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {to_int(parts[0])};
  if (parts.size() != 3) throw ConfigError("run.users", "expected A:B:STEP");
  const int first = to_int(parts[0]);
  const int last = to_int(parts[1]);
  const int step = to_int(parts[2]);
  for (int n = first; n <= last; n += step) counts.push_back(n);
  if (counts.empty()) throw ConfigError("run.users", "empty user range");
  return counts;
}

std::string format_user_range(const std::vector<int>& counts) {
  if (counts.empty()) throw ConfigError("run.users", "empty user range");
  if (counts.size() == 1) return std::to_string(counts[0]);
  const int step = counts[1] - counts[0];
  bool arithmetic = step > 0;
  for (std::size_t i = 2; i < counts.size() && arithmetic; ++i)
    arithmetic = counts[i] - counts[i - 1] == step;
  if (arithmetic)
    return std::to_string(counts.front()) + ":" + std::to_string(counts.back()) + ":" +
           std::to_string(step);
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? "," : "") + std::to_string(counts[i]);
  return s;
}

std::vector<System> parse_systems(std::string_view spec) {
  spec = trim(spec);
  if (spec == "vcsel") return {System::Vcsel};
  if (spec == "led") return {System::Led};
  if (spec == "both") return {System::Vcsel, System::Led};
  throw ConfigError("run.systems", "expected vcsel|led|both, got '" + std::string(spec) + "'");
}

RateModel parse_rate_model(std::string_view spec) {
  spec = trim(spec);
  if (spec == "shannon") return RateModel::Shannon;
  if (spec == "ook") return RateModel::OokFec;
  throw ConfigError("system.rate_model",
                    "expected shannon|ook, got '" + std::string(spec) + "'");
}

std::string serialize_config(const Scenario& s, const RunConfig& run) {
  std::ostringstream out;
  auto kv = [&](const char* key, const std::string& value) { out << key << " = " << value << "\n"; };
  auto num = [&](const char* key, double v) { kv(key, format_number(v)); };
  auto flag = [&](const char* key, bool v) { kv(key, v ? "true" : "false"); };

  out << "# effective configuration\n\n[system]\n";
  kv("n_aps", std::to_string(s.n_aps()));
  if (!s.users.empty()) {
    std::string users;
    for (std::size_t i = 0; i < s.users.size(); ++i) {
      const Vec3& u = s.users[i];
      users += (i ? "; " : "") + format_number(u.x) + ", " + format_number(u.y) + ", " +
               format_number(u.z);
    }
    kv("users", users);
  }
  num("fec_ber_limit", s.fec_ber_limit);
  kv("rate_model", std::string(to_string(s.rate_model)));

  out << "\n[room]\n";
  num("width", s.room.width);
  num("depth", s.room.depth);
  num("height", s.room.height);
  num("receive_plane_height", s.room.receive_plane_height);

  out << "\n[vcsel]\n";
  kv("n_elements", std::to_string(s.vcsel.n_elements));
  num("pitch", s.vcsel.pitch);
  num("beam_waist_w0", s.vcsel.beam_waist_w0);
  num("wavelength", s.vcsel.wavelength);
  num("lens_focal_length", s.vcsel.lens_focal_length);
  num("vcsel_to_lens", s.vcsel.vcsel_to_lens);
  num("lens_refractive_index", s.vcsel.lens_refractive_index);
  num("optical_power_per_element", s.vcsel.optical_power_per_element);
  num("electrical_power_per_element", s.vcsel.electrical_power_per_element);
  num("bandwidth_hz", s.vcsel.bandwidth_hz);
  num("rin_db_per_hz", s.vcsel.rin_db_per_hz);

  out << "\n[led]\n";
  kv("n_emitters", std::to_string(s.led.n_emitters));
  num("lambertian_order_m", s.led.lambertian_order_m);
  num("optical_power_per_emitter", s.led.optical_power_per_emitter);
  num("electrical_power_per_emitter", s.led.electrical_power_per_emitter);
  num("bandwidth_hz", s.led.bandwidth_hz);

  out << "\n[receiver]\n";
  num("detector_area", s.receiver.detector_area);
  num("fov_half_angle", s.receiver.fov_half_angle);
  num("responsivity_vcsel", s.receiver.responsivity_vcsel);
  num("responsivity_led", s.receiver.responsivity_led);
  num("load_resistance", s.receiver.load_resistance);
  num("tia_noise_figure_db", s.receiver.tia_noise_figure_db);
  num("temperature_k", s.receiver.temperature_k);
  num("background_current", s.receiver.background_current);

  out << "\n[noise]\n";
  flag("include_signal_shot", s.noise.include_signal_shot);
  kv("rin_mode", s.noise.rin_mode == RinMode::Aggregate ? "aggregate" : "per_element");

  out << "\n[run]\n";
  kv("systems", run.systems.size() == 2 ? "both" : std::string(to_string(run.systems.at(0))));
  kv("users", format_user_range(run.user_counts));
  kv("drops", std::to_string(run.n_drops));
  kv("seed", std::to_string(run.base_seed));
  kv("output_dir", run.output_dir);
  flag("plots", run.emit_plots);
  flag("dump_channel", run.dump_channel);
  kv("threads", std::to_string(run.threads));
  return out.str();
}

}  // namespace owcsim
