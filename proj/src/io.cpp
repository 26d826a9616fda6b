#include "circle_colim/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim::io {
namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw PreconditionError("expected a number or [re, im]");
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return Rational(j.get<double>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
      return Rational(boost::multiprecision::cpp_int(s.substr(0, slash))) /
             Rational(boost::multiprecision::cpp_int(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw PreconditionError("bad rational '" + s + "'");
    }
  }
  throw PreconditionError("expected a rational coefficient");
}

int mode_index(const std::string& key) {
  std::size_t used = 0;
  int m = 0;
  try {
    m = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw PreconditionError("bad mode index '" + key + "'");
  return m;
}

Matrix matrix_from_json(const json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n))
    throw PreconditionError("matrix needs " + std::to_string(n * n) + " row-major entries");
  Matrix u(n, n);
  for (int k = 0; k < n * n; ++k) u(k / n, k % n) = complex_from_json(j[static_cast<std::size_t>(k)]);
  return u;
}

json matrix_to_json(const Matrix& u) {
  json out = json::array();
  for (int r = 0; r < u.rows(); ++r)
    for (int c = 0; c < u.cols(); ++c) out.push_back(complex_to_json(u(r, c)));
  return out;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& value) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << value.dump(1) << '\n';
}

json to_json(const Interval& arc) { return {{"start", arc.start()}, {"length", arc.length()}}; }

Interval interval_from_json(const json& j) { return Interval(field<double>(j, "start"), field<double>(j, "length")); }

json to_json(const Cover& cover) {
  json out;
  out["intervals"] = json::array();
  for (const auto& arc : cover.intervals) out["intervals"].push_back(to_json(arc));
  out["d"] = cover.d;
  out["based"] = cover.based ? json(cover.based->angle()) : json(nullptr);
  return out;
}

Cover cover_from_json(const json& j) {
  Cover cover;
  const json& arcs = member(j, "intervals");
  if (!arcs.is_array()) throw PreconditionError("'intervals' must be an array");
  for (const auto& a : arcs) cover.intervals.push_back(interval_from_json(a));
  cover.d = field<double>(j, "d");
  if (j.contains("based") && !j.at("based").is_null()) cover.based = CirclePoint(field<double>(j, "based"));
  return cover;
}

json to_json(const CircleDiffeo& phi) {
  return {{"n", phi.size()}, {"lift", std::vector<double>(phi.lift().begin(), phi.lift().end())}};
}

CircleDiffeo diffeo_from_json(const json& j) {
  const auto lift = field<std::vector<double>>(j, "lift");
  if (j.contains("n") && field<std::size_t>(j, "n") != lift.size())
    throw PreconditionError("'n' does not match the number of lift values");
  return CircleDiffeo(lift);
}

json to_json(const Loop& gamma) {
  json values = json::array();
  for (const Matrix& u : gamma.values()) values.push_back(matrix_to_json(u));
  return {{"group", gamma.group().name()}, {"n", gamma.size()}, {"values", values}};
}

Loop loop_from_json(const json& j) {
  const GroupDescriptor group = parse_group(field<std::string>(j, "group"));
  const json& values = member(j, "values");
  if (!values.is_array()) throw PreconditionError("'values' must be an array");
  if (j.contains("n") && field<std::size_t>(j, "n") != values.size())
    throw PreconditionError("'n' does not match the number of samples");
  std::vector<Matrix> samples;
  samples.reserve(values.size());
  for (const auto& v : values) samples.push_back(matrix_from_json(v, group.n));
  return Loop(group, std::move(samples));
}

json to_json(const ComplexField& f) {
  json modes = json::object();
  for (const auto& [m, c] : f.modes) modes[std::to_string(m)] = complex_to_json(c);
  return {{"modes", modes}};
}

ComplexField field_from_json(const json& j) {
  ComplexField f;
  const json& modes = member(j, "modes");
  if (!modes.is_object()) throw PreconditionError("'modes' must be an object");
  for (const auto& [key, value] : modes.items()) {
    if (value.is_string() || (value.is_array() && value.size() == 2 && (value[0].is_string() || value[1].is_string())))
      f.add(mode_index(key), field_from_json_exact({{"modes", {{key, value}}}}).coefficient(mode_index(key)).to_complex());
    else
      f.add(mode_index(key), complex_from_json(value));
  }
  return f;
}

ExactField field_from_json_exact(const json& j) {
  ExactField f;
  const json& modes = member(j, "modes");
  if (!modes.is_object()) throw PreconditionError("'modes' must be an object");
  for (const auto& [key, value] : modes.items()) {
    if (value.is_array()) {
      if (value.size() != 2) throw PreconditionError("coefficient must be [re, im]");
      f.add(mode_index(key), GaussianRational(rational_from_json(value[0]), rational_from_json(value[1])));
    } else {
      f.add(mode_index(key), GaussianRational(rational_from_json(value)));
    }
  }
  return f;
}

LieModes lie_modes_from_json(const json& j) {
  LieModes f;
  f.group = parse_group(field<std::string>(j, "group"));
  const json& modes = member(j, "modes");
  if (!modes.is_object()) throw PreconditionError("'modes' must be an object");
  for (const auto& [key, value] : modes.items()) f.modes[mode_index(key)] = matrix_from_json(value, f.group.n);
  return f;
}

json to_json(const LieModes& f) {
  json modes = json::object();
  for (const auto& [m, x] : f.modes) modes[std::to_string(m)] = matrix_to_json(x);
  return {{"group", f.group.name()}, {"modes", modes}};
}

namespace {

json letters_to_json(const Word& w) {
  json out = json::array();
  for (const Letter& l : w) out.push_back(json::array({l.gen, l.exp}));
  return out;
}

Word letters_from_json(const json& j) {
  if (!j.is_array()) throw PreconditionError("letters must be an array");
  Word w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer())
      throw PreconditionError("letter must be [generator, exponent]");
    const int exp = l[1].get<int>();
    if (exp != 1 && exp != -1) throw PreconditionError("letter exponent must be 1 or -1");
    w.push_back({l[0].get<int>(), exp});
  }
  return w;
}

}  // namespace

json to_json(const Word& w) { return {{"letters", letters_to_json(w)}}; }

Word word_from_json(const json& j) { return letters_from_json(member(j, "letters")); }

json to_json(const Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    steps.push_back({{"kind", step_kind_name(s.kind)},
                     {"position", s.position},
                     {"length", s.length},
                     {"replacement", letters_to_json(s.replacement)},
                     {"certificate", s.certificate ? to_json(*s.certificate) : json(nullptr)},
                     {"note", s.note}});
  }
  return {{"initial", letters_to_json(d.initial)},
          {"steps", steps},
          {"final", letters_to_json(d.final)},
          {"complete", d.complete},
          {"diagnostic", d.diagnostic}};
}

Derivation derivation_from_json(const json& j) {
  Derivation d;
  d.initial = letters_from_json(member(j, "initial"));
  d.final = letters_from_json(member(j, "final"));
  if (j.contains("complete")) d.complete = field<bool>(j, "complete");
  if (j.contains("diagnostic")) d.diagnostic = field<std::string>(j, "diagnostic");
  const json& steps = member(j, "steps");
  if (!steps.is_array()) throw PreconditionError("'steps' must be an array");
  for (const auto& s : steps) {
    RewriteStep step;
    step.kind = parse_step_kind(field<std::string>(s, "kind"));
    step.position = field<std::size_t>(s, "position");
    step.length = field<std::size_t>(s, "length");
    step.replacement = letters_from_json(member(s, "replacement"));
    if (s.contains("certificate") && !s.at("certificate").is_null()) step.certificate = interval_from_json(s.at("certificate"));
    if (s.contains("note")) step.note = field<std::string>(s, "note");
    d.steps.push_back(std::move(step));
  }
  return d;
}

namespace {

std::string element_file(std::size_t id) {
  std::ostringstream os;
  os << "element_" << std::setw(5) << std::setfill('0') << id << ".json";
  return os.str();
}

}  // namespace

void save_presentation(const std::filesystem::path& dir, const Presentation& p) {
  std::filesystem::create_directories(dir);
  const ElementStore& store = p.store();
  json index;
  index["mode"] = store.mode();
  index["n"] = store.grid_size();
  index["cover"] = to_json(p.cover());
  index["tolerances"] = {{"identity", p.tolerances().identity}, {"support", p.tolerances().support}};
  index["elements"] = json::array();
  const auto* loops = dynamic_cast<const LoopStore*>(&store);
  const auto* diffeos = dynamic_cast<const DiffeoStore*>(&store);
  if (loops) index["group"] = loops->group().name();
  for (std::size_t id = 0; id < store.size(); ++id) {
    const std::string name = element_file(id);
    index["elements"].push_back(name);
    write_json(dir / name, loops ? to_json(loops->at(static_cast<int>(id))) : to_json(diffeos->at(static_cast<int>(id))));
  }
  index["generators"] = json::array();
  for (const auto& g : p.generators())
    index["generators"].push_back({{"element", g.element},
                                   {"label", to_json(g.label)},
                                   {"cover_index", g.cover_index},
                                   {"left", g.left_conjugations},
                                   {"right", g.right_conjugations}});
  write_json(dir / "index.json", index);
}

Presentation load_presentation(const std::filesystem::path& dir) {
  const json index = read_json(dir / "index.json");
  const auto mode = field<std::string>(index, "mode");
  const auto n = field<std::size_t>(index, "n");
  std::shared_ptr<ElementStore> store;
  const json& files = member(index, "elements");
  if (!files.is_array()) throw PreconditionError("'elements' must be an array");
  if (mode == "loop") {
    auto loops = std::make_shared<LoopStore>(parse_group(field<std::string>(index, "group")), n);
    for (const auto& f : files) loops->add(loop_from_json(read_json(dir / f.get<std::string>())));
    store = loops;
  } else if (mode == "diffeo") {
    auto diffeos = std::make_shared<DiffeoStore>(n);
    for (const auto& f : files) diffeos->add(diffeo_from_json(read_json(dir / f.get<std::string>())));
    store = diffeos;
  } else {
    throw PreconditionError("unknown store mode '" + mode + "' (expected loop or diffeo)");
  }
  Tolerances tol;
  if (index.contains("tolerances")) {
    tol.identity = field<double>(index.at("tolerances"), "identity");
    tol.support = field<double>(index.at("tolerances"), "support");
  }
  Presentation p(store, cover_from_json(member(index, "cover")), tol);
  const json& gens = member(index, "generators");
  if (!gens.is_array()) throw PreconditionError("'generators' must be an array");
  for (const auto& g : gens)
    p.add_generator(field<int>(g, "element"), interval_from_json(member(g, "label")),
                    g.contains("cover_index") ? field<int>(g, "cover_index") : -1, g.contains("left") ? field<int>(g, "left") : 0,
                    g.contains("right") ? field<int>(g, "right") : 0);
  return p;
}

}  // namespace circle_colim::io
