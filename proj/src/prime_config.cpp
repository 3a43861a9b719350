#include "rgl/prime_config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rgl/error.hpp"

namespace rgl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

std::size_t parse_count(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != v.size() || n < 0) fail(line, "expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(n);
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a non-negative integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(line, "expected true/false, got '" + v + "'");
}

struct SectionState {
  std::optional<bool> enabled;
  std::optional<std::size_t> smoothness;
  std::optional<double> sigma_min;
  std::optional<double> sigma_max;
  std::optional<std::size_t> band;
  int first_line = 0;
};

PrimitiveParams preset_primitive(PrimitiveParams::Kind kind) {
  switch (kind) {
    case PrimitiveParams::Kind::Spectral: return {kind, 3, 0.0, 4.0, 0};
    case PrimitiveParams::Kind::Spatial: return {kind, 100, 0.0, spatial_sigma_max(100), 0};
    case PrimitiveParams::Kind::Color: return {kind, 10, 0.0, 0.01, 10};
    case PrimitiveParams::Kind::Additive: return {kind, 1, 0.0, 0.05, 0};
    default: return {kind, 1, 0.0, 0.0, 0};
  }
}

}  // namespace

PrimeConfig parse_prime_config(const std::string& text) {
  PrimeConfig cfg;
  std::map<std::string, SectionState> sections;
  bool mixing_set = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header '" + raw + "'");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section != "pipeline" && section != "spectral" && section != "spatial" &&
          section != "color" && section != "additive")
        fail(line_no, "unknown section [" + section + "]");
      if (section != "pipeline" && sections[section].first_line == 0)
        sections[section].first_line = line_no;
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value', got '" + raw + "'");
    std::string key = lower(trim(line.substr(0, eq)));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
    if (section.empty()) fail(line_no, "key '" + key + "' appears before any section header");

    if (section == "pipeline") {
      if (key == "width") cfg.width_n = parse_count(value, line_no);
      else if (key == "depth") cfg.depth_m = parse_count(value, line_no);
      else if (key == "mixing") {
        std::string m = lower(value);
        if (m == "dirichlet") cfg.mixing = MixingMode::DirichletWithClean;
        else if (m == "beta") cfg.mixing = MixingMode::BetaBlend;
        else fail(line_no, "mixing must be 'dirichlet' or 'beta', got '" + value + "'");
        mixing_set = true;
      } else if (key == "beta_alpha") cfg.beta_alpha = parse_real(value, line_no);
      else if (key == "beta_beta") cfg.beta_beta = parse_real(value, line_no);
      else if (key == "strength_scale") cfg.strength_scale = parse_real(value, line_no);
      else fail(line_no, "unknown key '" + key + "' in section [pipeline]");
    } else {
      SectionState& st = sections[section];
      if (key == "enabled") st.enabled = parse_bool(value, line_no);
      else if (key == "smoothness") st.smoothness = parse_count(value, line_no);
      else if (key == "sigma_min") st.sigma_min = parse_real(value, line_no);
      else if (key == "sigma_max") st.sigma_max = parse_real(value, line_no);
      else if (key == "band") {
        if (section != "color") fail(line_no, "key 'band' only applies to section [color]");
        st.band = parse_count(value, line_no);
      } else fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
    }
  }
  (void)mixing_set;

  auto build = [&](const char* name, PrimitiveParams::Kind kind, bool default_on) {
    auto it = sections.find(name);
    bool present = it != sections.end();
    const SectionState st = present ? it->second : SectionState{};
    bool enabled = st.enabled.value_or(present ? true : default_on);
    if (!enabled) return;
    PrimitiveParams p = preset_primitive(kind);
    if (st.smoothness) p.K = *st.smoothness;
    if (st.sigma_min) p.sigma_min = *st.sigma_min;
    if (st.sigma_max) p.sigma_max = *st.sigma_max;
    if (st.band) p.delta = *st.band;
    if (kind == PrimitiveParams::Kind::Additive) cfg.additive_enabled = true;
    cfg.pool.push_back(p);
  };

  cfg.pool.clear();
  build("spectral", PrimitiveParams::Kind::Spectral, true);
  build("spatial", PrimitiveParams::Kind::Spatial, true);
  build("color", PrimitiveParams::Kind::Color, true);
  build("additive", PrimitiveParams::Kind::Additive, false);

  cfg.validate();
  return cfg;
}

PrimeConfig load_prime_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open configuration file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_prime_config(buf.str());
}

std::string prime_config_json(const PrimeConfig& cfg) {
  nlohmann::json j;
  j["width"] = cfg.width_n;
  j["depth"] = cfg.depth_m;
  j["mixing"] = cfg.mixing == MixingMode::BetaBlend ? "beta" : "dirichlet";
  if (cfg.mixing == MixingMode::BetaBlend) {
    j["beta_alpha"] = cfg.beta_alpha;
    j["beta_beta"] = cfg.beta_beta;
  }
  j["strength_scale"] = cfg.strength_scale;
  nlohmann::json pool = nlohmann::json::array();
  for (const auto& p : cfg.pool) {
    nlohmann::json pj;
    pj["kind"] = p.name();
    if (p.kind != PrimitiveParams::Kind::Identity) {
      pj["smoothness"] = p.K;
      pj["sigma_min"] = p.sigma_min;
      pj["sigma_max"] = p.sigma_max;
      if (p.kind == PrimitiveParams::Kind::Color) pj["band"] = p.delta;
    }
    pool.push_back(pj);
  }
  j["pool"] = pool;
  return j.dump(2);
}

}  // namespace rgl
