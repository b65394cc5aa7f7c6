#include "sofic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sofic/error.hpp"

namespace sofic::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<Point> points_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  std::vector<Point> out;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError("expected a nonnegative integer");
    out.push_back(static_cast<Point>(v.get<long long>()));
  }
  return out;
}

}  // namespace

json to_json(const Perm& p) { return json(std::vector<Point>(p.images().begin(), p.images().end())); }

Perm perm_from_json(const json& j) {
  auto pts = points_from_json(j);
  try {
    return Perm(std::move(pts));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid permutation: ") + e.what());
  }
}

json to_json(const Subset& s) { return json(s.points()); }

Subset subset_from_json(const json& j, std::size_t ambient) {
  auto pts = points_from_json(j);
  try {
    return Subset(ambient, std::move(pts));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid subset: ") + e.what());
  }
}

json to_json(const SubsetFamily& fam) {
  json out = json::array();
  for (const Subset& s : fam.sets()) out.push_back(to_json(s));
  return out;
}

SubsetFamily family_from_json(const json& j, std::size_t ambient) {
  if (!j.is_array()) throw ParseError("family: expected an array of arrays");
  std::vector<Subset> sets;
  for (const json& s : j) sets.push_back(subset_from_json(s, ambient));
  return SubsetFamily(ambient, std::move(sets));
}

json to_json(const SoficApprox& theta) {
  json out;
  out["dimension"] = theta.dimension();
  out["generators"] = theta.generators();
  json images = json::object();
  for (std::size_t g = 0; g < theta.generators().size(); ++g) images[theta.generators()[g]] = to_json(theta.image(g));
  out["images"] = std::move(images);
  if (theta.relators()) {
    json rel = json::array();
    for (const Word& w : *theta.relators()) rel.push_back(format_word(theta.generators(), w));
    out["relators"] = std::move(rel);
  }
  return out;
}

SoficApprox approx_from_json(const json& j) {
  return guarded("approximation", [&] {
    const auto dim = j.at("dimension").get<std::size_t>();
    auto gens = j.at("generators").get<std::vector<std::string>>();
    std::vector<Perm> images;
    for (const auto& g : gens) {
      Perm p = perm_from_json(j.at("images").at(g));
      if (p.size() != dim) throw ParseError("image of '" + g + "' has the wrong dimension");
      images.push_back(std::move(p));
    }
    std::optional<std::vector<Word>> relators;
    if (j.contains("relators")) {
      relators.emplace();
      for (const auto& r : j.at("relators")) relators->push_back(parse_word(gens, r.get<std::string>()));
    }
    try {
      return SoficApprox(dim, std::move(gens), std::move(images), std::move(relators));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  });
}

json to_json(const CayleyTable& k) { return {{"order", k.order}, {"identity", k.identity}, {"table", k.table}}; }

CayleyTable table_from_json(const json& j) {
  CayleyTable out = guarded("cayley table", [&] {
    CayleyTable k;
    k.order = j.at("order").get<std::size_t>();
    k.identity = j.at("identity").get<std::size_t>();
    k.table = j.at("table").get<std::vector<std::vector<Point>>>();
    return k;
  });
  out.validate();
  return out;
}

json to_json(const CombinePlan& plan) {
  json out;
  json req = json::array(), ach = json::array();
  for (const auto& r : plan.requested) req.push_back(to_string(r));
  for (const auto& a : plan.achieved) ach.push_back(to_string(a));
  out["requested_weights"] = std::move(req);
  out["dimensions"] = plan.dims;
  out["multiplicities"] = plan.multiplicities;
  out["total_dimension"] = plan.total_dimension;
  out["achieved_weights"] = std::move(ach);
  out["max_error"] = to_string(plan.max_error);
  return out;
}

json to_json(const Alignment& a) {
  return {{"conjugator", to_json(a.conjugator)},
          {"objective", to_string(a.objective)},
          {"tail_bound", to_string(a.tail_bound)},
          {"mode", to_string(a.mode)},
          {"distance_display_only", a.distance()}};
}

json to_json(const ErgodicityCertificate& c) {
  json out;
  out["verdict"] = to_string(c.verdict);
  out["order"] = c.order.str();
  out["order_formula"] = c.order_formula;
  json w = json::array();
  if (c.verdict == Verdict::transitive) {
    for (const Perm& p : c.witnesses) w.push_back(to_json(p));
  } else if (c.invariant) {
    w.push_back(to_json(*c.invariant));
  }
  out["witnesses"] = std::move(w);
  out["note"] = "finite-stage transitivity proxy; not a statement about the limit action";
  return out;
}

json to_json(const TraceProfile& tp, const std::vector<std::string>& generators) {
  json entries = json::array();
  for (const auto& [w, ff] : tp.entries) entries.push_back({{"word", format_word(generators, w)}, {"fixed_fraction", to_string(ff)}});
  return {{"entries", std::move(entries)}, {"soficity_score", to_string(tp.score)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_json_file_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace sofic::io
