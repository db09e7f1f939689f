// Command-line driver for the face-ring toolkit.
//
// Complexes stream between commands as canonical JSON on stdin/stdout, so
// commands compose as pipelines:
//
//   facering gen cross-polytope 3 | facering inspect
//   facering gen boundary-simplex 4 | facering aniso cert --char 2
//   facering reproduce --suite identities
//
// Exit codes: 0 for success (including ANISOTROPIC and other verified
// outcomes), 2 for INCONCLUSIVE results, 1 for errors. Randomized commands
// print their seed and, where applicable, the recorded error bound.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "facering/acceptance.hpp"
#include "facering/certify.hpp"
#include "facering/complex.hpp"
#include "facering/fields.hpp"
#include "facering/lsop.hpp"
#include "facering/moves.hpp"
#include "facering/multipoly.hpp"
#include "facering/ratfunc.hpp"
#include "facering/reduction.hpp"

using json = nlohmann::ordered_json;
using namespace facering;

namespace {

struct RunConfig {
  uint64_t seed = 0;
  uint64_t characteristic = 0;
  int field_bits = 20;
  int trials = 100;
  int budget = 10000;
  std::string format = "json";
  std::string out;
};

SimplicialComplex read_complex_stdin() {
  std::stringstream ss;
  ss << std::cin.rdbuf();
  if (ss.str().empty()) fail("BadParams", "expected a complex as JSON on standard input");
  return complex_from_json_text(ss.str());
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) fail("IoError", "cannot open output file " + cfg.out);
    f << text << "\n";
  } else {
    std::cout << text << "\n";
  }
}

json move_to_json(const BistellarMove& mv) {
  return json{{"sigma", mv.sigma}, {"tau", mv.tau}, {"index", mv.index()}};
}

// A context over F_p (p prime), F_{2^k} for char 2 with field_bits > 1, or a
// large prime standing in for characteristic 0, at a seeded random
// specialization of the fully generic matrix.
template <class Fn>
int with_specialized_context(const SimplicialComplex& K, const RunConfig& cfg, Fn&& fn) {
  Rng rng(cfg.seed);
  if (cfg.characteristic == 2 && cfg.field_bits > 1) {
    auto M = generic_lsop<Fp>(K, Fp::Field{2});
    auto sc = specialize_context(K, M, GF2k::Field(cfg.field_bits), rng);
    return fn(sc.ctx);
  }
  uint64_t p = cfg.characteristic == 0 ? 1000003 : cfg.characteristic;
  auto M = generic_lsop<Rat>(K, Rat::Field{});
  auto sc = specialize_context(K, M, Fp::Field{p}, rng);
  return fn(sc.ctx);
}

ExpVec parse_exponents(const std::string& s, int m) {
  ExpVec e((size_t)m, 0u);
  std::stringstream ss(s);
  std::string tok;
  size_t i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= (size_t)m) fail("BadParams", "more exponents than vertices");
    e[i++] = (uint32_t)std::stoul(tok);
  }
  if (i != (size_t)m)
    fail("BadParams", "expected " + std::to_string(m) + " comma-separated exponents");
  return e;
}

Face parse_face(const std::string& s) {
  Face f;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) f.push_back(std::stoi(tok));
  return f;
}

int cmd_gen(const std::string& family, const std::vector<int>& params,
            const RunConfig& cfg) {
  SimplicialComplex K = [&] {
    auto need = [&](size_t n) {
      if (params.size() != n)
        fail("BadParams", family + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (family == "boundary-simplex") { need(1); return boundary_simplex(params[0]); }
    if (family == "cross-polytope") { need(1); return cross_polytope(params[0]); }
    if (family == "cyclic") { need(2); return cyclic_polytope_boundary(params[0], params[1]); }
    if (family == "stacked") { need(2); return stacked_sphere(params[0], params[1], cfg.seed); }
    if (family == "rp2") { need(0); return rp2_six_vertices(); }
    fail("BadParams", "unknown family " + family +
                          " (boundary-simplex, cross-polytope, cyclic, stacked, rp2)");
  }();
  emit(cfg, complex_to_json_text(K));
  return 0;
}

int cmd_inspect(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto fh = fh_vectors(K);
  if (cfg.format == "table") {
    std::ostringstream t;
    t << "m = " << K.vertex_count() << "\nd = " << K.d() << "\nfacets = "
      << K.facets().size() << "\nh = (";
    for (size_t i = 0; i < fh.h.size(); ++i) t << (i ? "," : "") << fh.h[i];
    t << ")\nhash = " << K.hash();
    emit(cfg, t.str());
    return 0;
  }
  json j{{"v", 1},
         {"m", K.vertex_count()},
         {"d", K.d()},
         {"dim", K.d() - 1},
         {"facets", K.facets().size()},
         {"f", fh.f},
         {"h", fh.h},
         {"hash", K.hash()}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_homology(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto betti = homology_ranks(K, cfg.characteristic);
  json j{{"v", 1},
         {"char", cfg.characteristic},
         {"reduced_betti", betti},
         {"homology_sphere", is_homology_sphere(K, cfg.characteristic)},
         {"homology_ball", is_homology_ball(K, cfg.characteristic)}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_moves_walk(int steps, int vertex_cap, const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto w = random_walk(K, steps, cfg.seed, vertex_cap);
  std::cerr << "walk: seed=" << cfg.seed << " steps=" << steps
            << " end_hash=" << w.end.hash() << "\n";
  emit(cfg, complex_to_json_text(w.end));
  return 0;
}

int cmd_moves_reduce(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto r = reduce_to_boundary_simplex(K, cfg.budget, cfg.seed);
  json j{{"v", 1},
         {"seed", cfg.seed},
         {"budget", cfg.budget},
         {"success", r.success},
         {"end", json::parse(complex_to_json_text(r.end))}};
  if (r.success) j["log"] = json::parse(move_log_to_json_text(r.log));
  emit(cfg, j.dump(2));
  return r.success ? 0 : 2;  // failure to reduce is inconclusive
}

int cmd_moves_list(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  json arr = json::array();
  for (const auto& mv : valid_moves(K)) arr.push_back(move_to_json(mv));
  emit(cfg, json{{"v", 1}, {"moves", arr}}.dump(2));
  return 0;
}

int cmd_psi(const std::string& exponents, const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto e = parse_exponents(exponents, K.vertex_count());
  return with_specialized_context(K, cfg, [&](auto& ctx) {
    auto v = ctx.psi_monomial(e);
    json j{{"v", 1}, {"seed", cfg.seed}, {"char", cfg.characteristic},
           {"exponents", e}, {"value", v.str()},
           {"note", "value at a seeded random specialization of the generic matrix"}};
    emit(cfg, j.dump(2));
    return 0;
  });
}

int cmd_pairing(int degree, const RunConfig& cfg) {
  auto K = read_complex_stdin();
  return with_specialized_context(K, cfg, [&](auto& ctx) {
    auto rows = face_monomial_span(K, degree);
    auto cols = face_monomial_span(K, K.d() - degree);
    auto P = pairing_matrix(ctx, rows, cols);
    json mat = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      json row = json::array();
      for (size_t jx = 0; jx < cols.size(); ++jx) row.push_back(P.at(i, jx).str());
      mat.push_back(row);
    }
    json j{{"v", 1}, {"seed", cfg.seed}, {"degree", degree},
           {"rows", rows}, {"cols", cols}, {"matrix", mat},
           {"rank", gauss_rank(P)}};
    emit(cfg, j.dump(2));
    return 0;
  });
}

int cmd_basis(int degree, const std::vector<std::string>& must_include,
              const RunConfig& cfg) {
  auto K = read_complex_stdin();
  std::vector<Face> pins;
  for (const auto& s : must_include) pins.push_back(parse_face(s));
  return with_specialized_context(K, cfg, [&](auto& ctx) {
    auto b = select_basis(ctx, degree, pins);
    json j{{"v", 1}, {"seed", cfg.seed}, {"degree", degree},
           {"basis", b.faces}, {"witness_cols", b.witness_cols}};
    emit(cfg, j.dump(2));
    return 0;
  });
}

int cmd_aniso_cert(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  if (!is_homology_sphere(K, cfg.characteristic))
    fail("NotHomologySphere",
         "certification needs a homology sphere over the requested characteristic");
  if (cfg.characteristic != 2)
    fail("BadParams", "certification is implemented for --char 2 only; use aniso probe");
  auto cert = aniso_char2_certificate(K, cfg.seed, cfg.field_bits, cfg.trials);
  emit(cfg, cert.to_json_text());
  std::cerr << "aniso cert: seed=" << cfg.seed << " status=" << cert.status
            << " error_bound_log2=" << cert.error_bound_log2 << "\n";
  if (cert.status == "INCONCLUSIVE") return 2;
  return 0;
}

int cmd_aniso_probe(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  auto rep = aniso_random_probe(K, cfg.characteristic, cfg.trials, cfg.seed);
  emit(cfg, rep.to_json_text());
  std::cerr << "aniso probe: seed=" << cfg.seed << " trials=" << cfg.trials
            << " counterexamples=" << rep.counterexamples.size()
            << " (misses are screened and confirmed symbolically before being reported)\n";
  return 0;
}

int cmd_lefschetz(const RunConfig& cfg) {
  auto K = read_complex_stdin();
  uint64_t p = cfg.characteristic == 0 ? 1000003 : cfg.characteristic;
  auto rep = lefschetz_check(K, cfg.seed, p);
  emit(cfg, rep.to_json_text());
  std::cerr << "lefschetz: seed=" << cfg.seed << " holds=" << (rep.holds ? 1 : 0)
            << " (a single specialization can only certify, not refute)\n";
  return rep.holds ? 0 : 2;
}

int cmd_reproduce(const std::string& suite, const RunConfig& cfg) {
  json out{{"v", 1}, {"suite", suite}};
  bool pass = true;
  if (suite == "identities" || suite == "all") {
    auto r = identity_suite();
    out["identities"] = json::parse(r.to_json_text());
    pass = pass && r.all_pass();
  }
  if (suite == "diffop" || suite == "all") {
    auto r = diffop_experiment();
    out["diffop"] = json::parse(r.to_json_text());
    pass = pass && r.all_pass();
  }
  if (suite == "degree" || suite == "all") {
    auto r = degree_argument_experiment(cfg.seed);
    out["degree"] = json::parse(r.to_json_text());
    pass = pass && r.all_pass();
  }
  if (!out.contains("identities") && !out.contains("diffop") && !out.contains("degree"))
    fail("BadParams", "unknown suite " + suite + " (identities, diffop, degree, all)");
  out["all_pass"] = pass;
  emit(cfg, out.dump(2));
  return pass ? 0 : 1;
}

int cmd_corpus_run(const RunConfig& cfg) {
  auto results = run_acceptance_suite();
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (cfg.format == "table") {
    std::ostringstream t;
    for (const auto& r : results)
      t << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] "
        << r.name << " (" << r.seconds << "s) " << r.detail << "\n";
    t << (all ? "ALL PASS" : "FAILURES PRESENT");
    emit(cfg, t.str());
  } else {
    emit(cfg, acceptance_to_json_text(results));
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact face-ring toolkit: generation, reduction, certification"};
  app.require_subcommand(1);
  RunConfig cfg;

  // Shared flags; registered per subcommand below where meaningful.
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "random seed (default 0)");
    c->add_option("--char", cfg.characteristic, "field characteristic (0 = rationals)");
    c->add_option("--field-bits", cfg.field_bits, "extension degree k of F_{2^k} (default 20)");
    c->add_option("--trials", cfg.trials, "randomized trial count (default 100)");
    c->add_option("--budget", cfg.budget, "search budget for reductions");
    c->add_option("--format", cfg.format, "output format: json | table")
        ->check(CLI::IsMember({"json", "table"}));
    c->add_option("--out", cfg.out, "write the report to a file instead of stdout");
  };

  // gen
  std::string family;
  std::vector<int> gen_params;
  auto* gen = app.add_subcommand("gen", "generate a corpus complex on stdout");
  gen->add_option("family", family,
                  "boundary-simplex | cross-polytope | cyclic | stacked | rp2")
      ->required();
  gen->add_option("params", gen_params, "family parameters");
  add_common(gen);

  auto* inspect = app.add_subcommand("inspect", "f/h-vectors and hash of a complex");
  add_common(inspect);
  auto* homology = app.add_subcommand("homology", "reduced Betti numbers over F_p or Q");
  add_common(homology);

  auto* moves = app.add_subcommand("moves", "bistellar move exploration");
  int steps = 5, vertex_cap = 0;
  auto* walk = moves->add_subcommand("walk", "random walk; end complex on stdout");
  walk->add_option("--steps", steps, "number of moves (default 5)");
  walk->add_option("--vertex-cap", vertex_cap, "suppress 0-moves above this vertex count");
  add_common(walk);
  auto* reduce = moves->add_subcommand("reduce", "anneal toward a boundary simplex");
  add_common(reduce);
  auto* list = moves->add_subcommand("list", "all valid moves of the input complex");
  add_common(list);
  moves->require_subcommand(1);

  std::string exponents;
  auto* psi = app.add_subcommand("psi", "canonical-function value of a monomial");
  psi->add_option("--exponents", exponents, "comma-separated exponent vector, length m")
      ->required();
  add_common(psi);

  int degree = 0;
  auto* pairing = app.add_subcommand("pairing", "Poincare pairing matrix in one degree");
  pairing->add_option("--degree", degree)->required();
  add_common(pairing);

  std::vector<std::string> must_include;
  auto* basis = app.add_subcommand("basis", "certified face-monomial basis of a degree");
  basis->add_option("--degree", degree)->required();
  basis->add_option("--must-include", must_include, "faces to pin, e.g. 1,2");
  add_common(basis);

  auto* aniso = app.add_subcommand("aniso", "anisotropy certification and probing");
  auto* cert = aniso->add_subcommand("cert", "exact characteristic-2 certificate");
  add_common(cert);
  auto* probe = aniso->add_subcommand("probe", "randomized isotropy search in char p or 0");
  add_common(probe);
  aniso->require_subcommand(1);

  auto* lefschetz = app.add_subcommand("lefschetz", "Lefschetz rank check");
  add_common(lefschetz);

  std::string suite = "all";
  auto* reproduce = app.add_subcommand("reproduce", "exact identity experiments");
  reproduce->add_option("--suite", suite, "identities | diffop | degree | all");
  add_common(reproduce);

  auto* corpus = app.add_subcommand("corpus", "corpus-wide suites");
  auto* corpus_run = corpus->add_subcommand("run", "full acceptance suite summary");
  add_common(corpus_run);
  corpus->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(family, gen_params, cfg);
    if (inspect->parsed()) return cmd_inspect(cfg);
    if (homology->parsed()) return cmd_homology(cfg);
    if (walk->parsed()) return cmd_moves_walk(steps, vertex_cap, cfg);
    if (reduce->parsed()) return cmd_moves_reduce(cfg);
    if (list->parsed()) return cmd_moves_list(cfg);
    if (psi->parsed()) return cmd_psi(exponents, cfg);
    if (pairing->parsed()) return cmd_pairing(degree, cfg);
    if (basis->parsed()) return cmd_basis(degree, must_include, cfg);
    if (cert->parsed()) return cmd_aniso_cert(cfg);
    if (probe->parsed()) return cmd_aniso_probe(cfg);
    if (lefschetz->parsed()) return cmd_lefschetz(cfg);
    if (reproduce->parsed()) return cmd_reproduce(suite, cfg);
    if (corpus_run->parsed()) return cmd_corpus_run(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
