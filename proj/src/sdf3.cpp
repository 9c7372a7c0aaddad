#include "hopskip/sdf3.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include "json.hpp"

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

namespace pt = boost::property_tree;
using json = nlohmann::json;

// ptree does not keep source positions; locate the first occurrence of an
// attribute so diagnostics can still point at a line.
std::size_t line_of(std::string_view xml, const std::string& needle) {
  auto pos = xml.find(needle);
  if (pos == std::string_view::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(xml.begin(), xml.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

std::string attr(const pt::ptree& node, const std::string& key, const std::string& element,
                 std::string_view xml) {
  auto v = node.get_optional<std::string>("<xmlattr>." + key);
  if (!v) {
    std::string name = node.get<std::string>("<xmlattr>.name", "");
    throw ParseError("missing attribute '" + key + "'",
                     name.empty() ? 0 : line_of(xml, "name=\"" + name + "\""), element);
  }
  return *v;
}

std::int64_t to_int(const std::string& text, const std::string& what, const std::string& element,
                    std::size_t line) {
  std::int64_t value = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw ParseError("'" + text + "' is not an integer " + what, line, element);
  }
  return value;
}

struct PortInfo {
  std::string direction;
  std::int64_t rate;
};

std::optional<Rational> rational_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (it->is_string()) return Rational::parse(it->get<std::string>());
  if (it->is_number_integer()) return Rational(it->get<std::int64_t>());
  if (it->is_number_float()) {
    // Go through the shortest decimal rendering so 0.9 stays 9/10.
    return Rational::parse(it->dump());
  }
  throw SchemaError(std::string("annotation field '") + key + "' must be a string or number");
}

std::optional<std::int64_t> integer_field(const json& obj, const char* key) {
  auto r = rational_field(obj, key);
  if (!r) return std::nullopt;
  if (!r->is_integer() || r->sign() < 0) {
    throw SchemaError(std::string("annotation field '") + key + "' must be a non-negative integer");
  }
  return r->num();
}

std::string decimal_or_fraction(const Rational& r) {
  // Exact decimal when the denominator is 2^a 5^b, else "num/den".
  std::int64_t den = r.den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return r.str();
  const int digits = std::max(twos, fives);
  if (digits == 0) return std::to_string(r.num());
  __int128 factor = 1;
  for (int i = 0; i < digits; ++i) factor *= 10;
  __int128 scaled = static_cast<__int128>(r.num()) * (factor / r.den());
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s;
  for (__int128 v = scaled; v > 0 || s.size() <= static_cast<std::size_t>(digits); v /= 10) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  }
  s.insert(s.end() - digits, '.');
  if (negative) s.insert(s.begin(), '-');
  return s;
}

}  // namespace

Annotations parse_annotations(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("annotation file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("actors") || !doc["actors"].is_object()) {
    throw SchemaError("annotation file needs an \"actors\" object");
  }
  if (doc.contains("schema") && doc["schema"] != 1) {
    throw SchemaError("unsupported annotation schema version");
  }
  Annotations out;
  for (const auto& [name, fields] : doc["actors"].items()) {
    if (!fields.is_object()) throw SchemaError("annotation for '" + name + "' must be an object");
    ActorAnnotation a;
    a.d = integer_field(fields, "d");
    a.w = integer_field(fields, "w");
    a.s = integer_field(fields, "s");
    a.p_exe = rational_field(fields, "p_exe");
    a.p_idle = rational_field(fields, "p_idle");
    a.p_sd = rational_field(fields, "p_sd");
    a.p_wu = rational_field(fields, "p_wu");
    a.p_slp = rational_field(fields, "p_slp");
    out.emplace(name, a);
  }
  return out;
}

std::string write_annotations(const SdfGraph& sdf) {
  json actors = json::object();
  for (const SdfActor& a : sdf.actors) {
    actors[a.name] = {
        {"d", std::to_string(a.exec_time)},
        {"w", std::to_string(a.wakeup)},
        {"s", std::to_string(a.shutdown)},
        {"p_exe", decimal_or_fraction(a.power.exe)},
        {"p_idle", decimal_or_fraction(a.power.idle)},
        {"p_sd", decimal_or_fraction(a.power.sd)},
        {"p_wu", decimal_or_fraction(a.power.wu)},
        {"p_slp", decimal_or_fraction(a.power.slp)},
    };
  }
  json doc = {{"schema", 1}, {"graph", sdf.name}, {"actors", actors}};
  return doc.dump(2) + "\n";
}

SdfGraph parse_sdf3(std::string_view xml, const Annotations* annotations, const Sdf3Options& options) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line());
  }

  auto root = tree.get_child_optional("sdf3");
  if (!root) throw ParseError("missing <sdf3> root element", 1, "sdf3");
  const std::string type = root->get<std::string>("<xmlattr>.type", "sdf");
  if (type != "sdf") {
    throw UnsupportedFeatureError("graph type '" + type + "' is not supported", line_of(xml, "<sdf3"),
                                  "sdf3");
  }
  auto app = root->get_child_optional("applicationGraph");
  if (!app) throw ParseError("missing <applicationGraph>", 0, "applicationGraph");
  auto sdf_node = app->get_child_optional("sdf");
  if (!sdf_node) throw ParseError("missing <sdf>", 0, "sdf");

  SdfGraph g;
  g.name = sdf_node->get<std::string>("<xmlattr>.name", app->get<std::string>("<xmlattr>.name", ""));
  std::map<std::string, std::map<std::string, PortInfo>> ports;

  for (const auto& [tag, node] : *sdf_node) {
    if (tag != "actor") continue;
    const std::string name = attr(node, "name", "actor", xml);
    const std::size_t line = line_of(xml, "name=\"" + name + "\"");
    if (ports.count(name)) throw ParseError("duplicate actor '" + name + "'", line, "actor");
    auto& actor_ports = ports[name];
    for (const auto& [ptag, port] : node) {
      if (ptag != "port") continue;
      const std::string pname = attr(port, "name", "port", xml);
      const std::string dir = attr(port, "type", "port", xml);
      const std::string rate_text = attr(port, "rate", "port", xml);
      if (rate_text.find(',') != std::string::npos) {
        throw UnsupportedFeatureError("cyclo-static rate list '" + rate_text + "' on port '" + pname + "'",
                                      line_of(xml, "rate=\"" + rate_text + "\""), "port");
      }
      const std::int64_t rate = to_int(rate_text, "rate", "port", line);
      if (rate < 1) throw ParseError("port rate must be at least 1", line, "port");
      if (dir != "in" && dir != "out") throw ParseError("port type must be in or out", line, "port");
      actor_ports[pname] = {dir, rate};
    }
    SdfActor a;
    a.name = name;
    a.exec_time = -1;
    g.actors.push_back(std::move(a));
  }
  if (g.actors.empty()) throw ParseError("graph has no actors", 0, "sdf");

  for (const auto& [tag, node] : *sdf_node) {
    if (tag != "channel") continue;
    SdfChannel c;
    c.name = attr(node, "name", "channel", xml);
    const std::size_t line = line_of(xml, "name=\"" + c.name + "\"");
    const std::string src = attr(node, "srcActor", "channel", xml);
    const std::string dst = attr(node, "dstActor", "channel", xml);
    c.src = g.find_actor(src);
    c.dst = g.find_actor(dst);
    if (c.src == static_cast<std::size_t>(-1) || c.dst == static_cast<std::size_t>(-1)) {
      throw ParseError("channel '" + c.name + "' references an unknown actor", line, "channel");
    }
    auto rate_of = [&](const std::string& actor, const std::string& port_attr, const char* want) {
      const std::string port = attr(node, port_attr, "channel", xml);
      auto it = ports[actor].find(port);
      if (it == ports[actor].end()) {
        throw ParseError("channel '" + c.name + "' references unknown port '" + port + "'", line, "channel");
      }
      if (it->second.direction != want) {
        throw ParseError("port '" + port + "' of actor '" + actor + "' has the wrong direction", line,
                         "channel");
      }
      return it->second.rate;
    };
    c.prod = rate_of(src, "srcPort", "out");
    c.cons = rate_of(dst, "dstPort", "in");
    c.tokens = to_int(node.get<std::string>("<xmlattr>.initialTokens", "0"), "initialTokens", "channel", line);
    if (c.tokens < 0) throw ParseError("negative initialTokens", line, "channel");
    g.channels.push_back(std::move(c));
  }

  if (auto props = app->get_child_optional("sdfProperties")) {
    for (const auto& [tag, node] : *props) {
      if (tag != "actorProperties") continue;
      const std::string actor = attr(node, "actor", "actorProperties", xml);
      std::size_t id = g.find_actor(actor);
      if (id == static_cast<std::size_t>(-1)) {
        throw ParseError("properties for unknown actor '" + actor + "'",
                         line_of(xml, "actor=\"" + actor + "\""), "actorProperties");
      }
      const pt::ptree* chosen = nullptr;
      for (const auto& [ptag, proc] : node) {
        if (ptag != "processor") continue;
        if (!chosen || proc.get<std::string>("<xmlattr>.default", "") == "true") chosen = &proc;
      }
      if (!chosen) continue;
      if (auto t = chosen->get_optional<std::string>("executionTime.<xmlattr>.time")) {
        g.actors[id].exec_time = to_int(*t, "execution time", "executionTime",
                                        line_of(xml, "actor=\"" + actor + "\""));
      }
    }
  }

  const AugmentationPolicy& dflt = options.defaults;
  for (SdfActor& a : g.actors) {
    ActorAnnotation ann;
    if (annotations) {
      if (auto it = annotations->find(a.name); it != annotations->end()) ann = it->second;
    }
    if (ann.d) a.exec_time = *ann.d;
    if (a.exec_time < 0) {
      throw ParseError("no execution time for actor '" + a.name + "'",
                       line_of(xml, "name=\"" + a.name + "\""), "actor");
    }
    a.wakeup = ann.w.value_or(dflt.wakeup);
    a.shutdown = ann.s.value_or(dflt.shutdown);
    a.power = {ann.p_exe.value_or(dflt.base.exe), ann.p_idle.value_or(dflt.base.idle),
               ann.p_sd.value_or(dflt.base.sd), ann.p_wu.value_or(dflt.base.wu),
               ann.p_slp.value_or(dflt.base.slp)};
  }
  if (annotations) {
    for (const auto& [name, unused] : *annotations) {
      if (g.find_actor(name) == static_cast<std::size_t>(-1)) {
        throw SchemaError("annotation for unknown actor '" + name + "'");
      }
    }
  }
  return g;
}

std::string write_sdf3(const SdfGraph& g) {
  pt::ptree sdf;
  sdf.put("<xmlattr>.name", g.name);
  sdf.put("<xmlattr>.type", g.name);
  for (std::size_t i = 0; i < g.actors.size(); ++i) {
    pt::ptree actor;
    actor.put("<xmlattr>.name", g.actors[i].name);
    actor.put("<xmlattr>.type", g.actors[i].name);
    for (const SdfChannel& c : g.channels) {
      if (c.src == i) {
        pt::ptree port;
        port.put("<xmlattr>.name", c.name + "_out");
        port.put("<xmlattr>.type", "out");
        port.put("<xmlattr>.rate", c.prod);
        actor.add_child("port", port);
      }
      if (c.dst == i) {
        pt::ptree port;
        port.put("<xmlattr>.name", c.name + "_in");
        port.put("<xmlattr>.type", "in");
        port.put("<xmlattr>.rate", c.cons);
        actor.add_child("port", port);
      }
    }
    sdf.add_child("actor", actor);
  }
  for (const SdfChannel& c : g.channels) {
    pt::ptree ch;
    ch.put("<xmlattr>.name", c.name);
    ch.put("<xmlattr>.srcActor", g.actors[c.src].name);
    ch.put("<xmlattr>.srcPort", c.name + "_out");
    ch.put("<xmlattr>.dstActor", g.actors[c.dst].name);
    ch.put("<xmlattr>.dstPort", c.name + "_in");
    if (c.tokens != 0) ch.put("<xmlattr>.initialTokens", c.tokens);
    sdf.add_child("channel", ch);
  }
  pt::ptree props;
  for (const SdfActor& a : g.actors) {
    pt::ptree ap;
    ap.put("<xmlattr>.actor", a.name);
    pt::ptree proc;
    proc.put("<xmlattr>.type", "proc_0");
    proc.put("<xmlattr>.default", "true");
    proc.put("executionTime.<xmlattr>.time", a.exec_time);
    ap.add_child("processor", proc);
    props.add_child("actorProperties", ap);
  }
  pt::ptree app;
  app.put("<xmlattr>.name", g.name);
  app.add_child("sdf", sdf);
  app.add_child("sdfProperties", props);
  pt::ptree root;
  root.put("sdf3.<xmlattr>.type", "sdf");
  root.put("sdf3.<xmlattr>.version", "1.0");
  root.get_child("sdf3").add_child("applicationGraph", app);

  std::ostringstream out;
  pt::write_xml(out, root, pt::xml_writer_make_settings<std::string>(' ', 2));
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SdfGraph load_sdf3(const std::filesystem::path& xml_path,
                   const std::optional<std::filesystem::path>& annotation_path,
                   const Sdf3Options& options) {
  const std::string xml = read_text_file(xml_path);
  if (!annotation_path) return parse_sdf3(xml, nullptr, options);
  const Annotations ann = parse_annotations(read_text_file(*annotation_path));
  return parse_sdf3(xml, &ann, options);
}

}  // namespace hopskip
