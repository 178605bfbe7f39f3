// subduce: subduction coefficients for the type-A Iwahori-Hecke algebras
// H(S_f, q^2) restricted to H(S_f1, q^2) x H(S_f2, q^2) at real q.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "subduce/io.hpp"
#include "subduce/solver.hpp"
#include "subduce/version.hpp"

namespace {

using namespace subduce;

constexpr double kVerifyTol = 1e-8;

struct Options {
  std::string lambda, lambda1, lambda2;
  std::string shape;
  int index = 1;
  double q = 1.0;
  double tol = 1e-10;
  std::string mode = "reduced";
  std::string format;
  std::string out;
  std::string cache_dir;
  std::vector<std::string> cases;
  std::string sizes;
};

void emit(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + opt.out);
  file << payload;
}

std::string rows_text(const std::vector<std::vector<int>>& rows) {
  std::string out = "[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out += ",";
    out += "[";
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) out += ",";
      out += std::to_string(rows[r][c]);
    }
    out += "]";
  }
  return out + "]";
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string cache_directory(const Options& opt) {
  if (const char* env = std::getenv("SUBDUCE_CACHE_DIR"); env && *env)
    return env;
  return opt.cache_dir;
}

std::string cache_path(const Options& opt) {
  std::string dir = cache_directory(opt);
  if (dir.empty()) return {};
  char q_text[40], tol_text[40];
  std::snprintf(q_text, sizeof q_text, "%.17g", opt.q);
  std::snprintf(tol_text, sizeof tol_text, "%.17g", opt.tol);
  std::string key = std::string(kVersion) + "|" + opt.lambda + "|" + opt.lambda1 +
                    "|" + opt.lambda2 + "|" + q_text + "|" + tol_text + "|" +
                    opt.mode;
  char name[32];
  std::snprintf(name, sizeof name, "%016llx",
                static_cast<unsigned long long>(fnv1a(key)));
  return dir + "/sdc-" + name + ".json";
}

std::optional<std::string> cache_read(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void cache_write(const std::string& path, const std::string& payload) {
  if (path.empty()) return;
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream file(path, std::ios::binary);
  if (file) file << payload;
}

std::string solution_text(const SDCSolution& sol, const VerificationReport& report) {
  std::ostringstream out;
  out << "problem: [" << sol.problem.lambda.to_string() << "] -> ["
      << sol.problem.lambda1.to_string() << "] x ["
      << sol.problem.lambda2.to_string() << "]\n";
  out << "q: " << format_significant(sol.q)
      << "  tol: " << format_significant(sol.tol) << "\n";
  out << "multiplicity: " << sol.multiplicity << "\n";
  out << "verification: " << (report.pass() ? "pass" : "FAIL")
      << " (system " << format_significant(report.residual_system)
      << ", ortho_row " << format_significant(report.residual_ortho_row);
  if (report.ortho_col_checked)
    out << ", ortho_col " << format_significant(report.residual_ortho_col);
  if (report.coupling_checked)
    out << ", coupling " << format_significant(report.residual_coupling);
  out << ")\n";
  if (sol.multiplicity > 0) {
    out << "coefficients (eta, skew, m2, value):\n";
    int n2 = static_cast<int>(sol.m2_basis.size());
    for (int eta = 0; eta < sol.multiplicity; ++eta)
      for (int t = 0; t < static_cast<int>(sol.skew_basis.size()); ++t)
        for (int m2 = 0; m2 < n2; ++m2)
          out << "  " << (eta + 1) << "  " << rows_text(sol.skew_basis[t].rows())
              << "  " << rows_text(sol.m2_basis[m2].rows()) << "  "
              << format_significant(
                     round_significant(sol.coefficient(t, m2, eta)))
              << "\n";
  }
  return out.str();
}

std::string solution_csv(const SDCSolution& sol) {
  std::string out = "eta,skew,m2,value\n";
  int n2 = static_cast<int>(sol.m2_basis.size());
  for (int eta = 0; eta < sol.multiplicity; ++eta)
    for (int t = 0; t < static_cast<int>(sol.skew_basis.size()); ++t)
      for (int m2 = 0; m2 < n2; ++m2)
        out += std::to_string(eta + 1) + ",\"" +
               rows_text(sol.skew_basis[t].rows()) + "\",\"" +
               rows_text(sol.m2_basis[m2].rows()) + "\"," +
               format_significant(round_significant(sol.coefficient(t, m2, eta))) +
               "\n";
  return out;
}

// Reads the reduced coefficients out of a full-system kernel and
// re-canonicalizes, so both modes serialize identically.
SDCSolution solve_via_full_system(const SubductionProblem& problem, QParam q,
                                  double tol) {
  SubductionSystem full = assemble_system(problem, q, SystemMode::Full);
  SubductionSystem red = assemble_system(problem, q, SystemMode::Reduced);
  SDCSolution empty{problem};
  empty.q = q.value;
  empty.tol = tol;
  empty.skew_basis = red.skew_basis();
  empty.m2_basis = red.m2_basis();
  empty.coefficients = Eigen::MatrixXd::Zero(red.cols(), 0);
  if (full.cols() == 0) return empty;

  std::vector<Eigen::VectorXd> kernel = null_space(full, tol);
  if (kernel.empty()) return empty;
  if (red.cols() == 0)
    throw std::runtime_error("full system has a kernel the reduced one lacks");

  const StandardTableau& m1_first = full.m1_basis().front();
  std::vector<Eigen::VectorXd> readout;
  for (const Eigen::VectorXd& v : kernel) {
    Eigen::VectorXd r(red.cols());
    for (int t = 0; t < static_cast<int>(red.skew_basis().size()); ++t) {
      int mi = canonical_index(full.m_basis(), join(m1_first, red.skew_basis()[t]));
      for (int m2 = 0; m2 < static_cast<int>(red.m2_basis().size()); ++m2)
        r(red.column_of(t, m2)) = v(full.column_of(mi, 0, m2));
    }
    readout.push_back(std::move(r));
  }
  SDCSolution sol = canonicalize(readout, red);
  sol.tol = tol;
  return sol;
}

int cmd_solve(const Options& opt) {
  Partition lambda = Partition::parse(opt.lambda);
  Partition lambda1 = Partition::parse(opt.lambda1);
  Partition lambda2 = Partition::parse(opt.lambda2);
  std::string format = opt.format.empty() ? "json" : opt.format;

  if (lambda1.size() + lambda2.size() != lambda.size()) {
    // no copies of [lambda1] x [lambda2] can appear; report an empty solution
    nlohmann::json j{{"problem",
                      {{"lambda", to_json(lambda)},
                       {"lambda1", to_json(lambda1)},
                       {"lambda2", to_json(lambda2)}}},
                     {"q", round_significant(opt.q)},
                     {"tol", round_significant(opt.tol)},
                     {"multiplicity", 0},
                     {"coefficients", nlohmann::json::array()}};
    if (format == "json")
      emit(opt, j.dump() + "\n");
    else
      emit(opt, "multiplicity: 0 (box counts do not add up)\n");
    return 0;
  }

  SubductionProblem problem(lambda, lambda1, lambda2);
  QParam q(opt.q);
  SystemMode mode = mode_from_string(opt.mode);

  Options keyed = opt;  // cache keys use the canonical partition spelling
  keyed.lambda = lambda.to_string();
  keyed.lambda1 = lambda1.to_string();
  keyed.lambda2 = lambda2.to_string();
  std::string path = cache_path(keyed);
  if (auto cached = cache_read(path)) {
    if (format == "json") {
      emit(opt, *cached);
      return 0;
    }
    SDCSolution sol = solution_from_json(nlohmann::json::parse(*cached));
    if (format == "csv") {
      emit(opt, solution_csv(sol));
      return 0;
    }
    emit(opt, solution_text(sol, verify_solution(sol, q, kVerifyTol)));
    return 0;
  }

  SDCSolution sol = mode == SystemMode::Reduced
                        ? solve_subduction(problem, q, opt.tol)
                        : solve_via_full_system(problem, q, opt.tol);
  VerificationReport report = verify_solution(sol, q, kVerifyTol);

  std::string payload = canonical_solution_json(sol);
  if (report.pass()) cache_write(path, payload);

  if (format == "json")
    emit(opt, payload);
  else if (format == "csv")
    emit(opt, solution_csv(sol));
  else
    emit(opt, solution_text(sol, report));

  if (!report.pass()) {
    std::cerr << "verification failed: " << to_json(report).dump() << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  Partition lambda = Partition::parse(opt.lambda);
  Partition lambda1 = Partition::parse(opt.lambda1);
  Partition lambda2 = Partition::parse(opt.lambda2);
  std::string format = opt.format.empty() ? "text" : opt.format;

  if (lambda1.size() + lambda2.size() != lambda.size()) {
    emit(opt, format == "json" ? "{\"multiplicity\":0,\"pass\":true}\n"
                               : "pass (multiplicity 0)\n");
    return 0;
  }
  SubductionProblem problem(lambda, lambda1, lambda2);
  QParam q(opt.q);

  SDCSolution sol = solve_subduction(problem, q, opt.tol);
  VerificationReport report = verify_solution(sol, q, kVerifyTol);

  // Full-system cross-check where the dense system stays small.
  std::uint64_t full_cols = hook_dimension(lambda) * hook_dimension(lambda1) *
                            hook_dimension(lambda2);
  bool want_oracle = mode_from_string(opt.mode) == SystemMode::Full ||
                     problem.f() <= 6;
  std::optional<OracleReport> oracle;
  if (want_oracle && full_cols <= 2000 && sol.multiplicity > 0)
    oracle = full_oracle_check(problem, q, opt.tol);
  else if (want_oracle && full_cols > 2000)
    std::cerr << "note: full-system oracle skipped (" << full_cols
              << " unknowns)\n";

  bool pass = report.pass() && (!oracle || oracle->pass());
  nlohmann::json j{{"problem",
                    {{"lambda", to_json(lambda)},
                     {"lambda1", to_json(lambda1)},
                     {"lambda2", to_json(lambda2)}}},
                   {"q", round_significant(opt.q)},
                   {"multiplicity", sol.multiplicity},
                   {"verification", to_json(report)},
                   {"oracle", oracle ? to_json(*oracle) : nlohmann::json()},
                   {"pass", pass}};
  if (format == "json") {
    emit(opt, j.dump() + "\n");
  } else {
    std::ostringstream out;
    out << "problem: [" << lambda.to_string() << "] -> [" << lambda1.to_string()
        << "] x [" << lambda2.to_string() << "]  q=" << format_significant(opt.q)
        << "\n";
    out << "multiplicity: " << sol.multiplicity << "\n";
    out << "system residual:    " << format_significant(report.residual_system) << "\n";
    out << "ortho (rows):       " << format_significant(report.residual_ortho_row) << "\n";
    if (report.ortho_col_checked)
      out << "ortho (columns):    " << format_significant(report.residual_ortho_col) << "\n";
    if (report.coupling_checked)
      out << "coupling:           " << format_significant(report.residual_coupling) << "\n";
    if (oracle) {
      out << "selection rule:     " << format_significant(oracle->residual_selection) << "\n";
      out << "identity rule:      " << format_significant(oracle->residual_identity) << "\n";
      out << "kernel projectors:  " << format_significant(oracle->residual_projector) << "\n";
    }
    out << (pass ? "pass" : "FAIL") << "\n";
    emit(opt, out.str());
  }
  return pass ? 0 : 1;
}

struct TableRow {
  Partition lambda, lambda1, lambda2;
  long multiplicity = 0;
  std::uint64_t full = 0, reduced = 0;
};

TableRow table_row(const Partition& lambda, const Partition& lambda1,
                   const Partition& lambda2) {
  TableRow row{lambda, lambda1, lambda2};
  if (lambda1.size() + lambda2.size() != lambda.size())
    throw std::invalid_argument("table case: box counts do not add up");
  row.multiplicity = lr_multiplicity(lambda, lambda1, lambda2);
  std::uint64_t a = hook_dimension(lambda);
  std::uint64_t b = hook_dimension(lambda1);
  std::uint64_t c = hook_dimension(lambda2);
  if (__builtin_mul_overflow(a, b, &row.full) ||
      __builtin_mul_overflow(row.full, c, &row.full))
    throw std::overflow_error("unknown count exceeds 64 bits");
  row.reduced =
      lambda.contains(lambda1) ? count_skew_fillings(lambda, lambda1) * c : 0;
  return row;
}

int cmd_table(const Options& opt) {
  std::vector<TableRow> rows;
  for (const std::string& text : opt.cases) {
    std::size_t s1 = text.find('/');
    std::size_t s2 = text.find('/', s1 == std::string::npos ? s1 : s1 + 1);
    if (s1 == std::string::npos || s2 == std::string::npos)
      throw std::invalid_argument("case must look like lambda/lambda1/lambda2");
    rows.push_back(table_row(Partition::parse(text.substr(0, s1)),
                             Partition::parse(text.substr(s1 + 1, s2 - s1 - 1)),
                             Partition::parse(text.substr(s2 + 1))));
  }
  if (!opt.sizes.empty()) {
    std::size_t comma = opt.sizes.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--sizes expects f,f1");
    int f = std::stoi(opt.sizes.substr(0, comma));
    int f1 = std::stoi(opt.sizes.substr(comma + 1));
    if (f1 < 1 || f1 >= f) throw std::invalid_argument("--sizes expects 1 <= f1 < f");
    for (const Partition& lambda : partitions_of(f))
      for (const Partition& lambda1 : partitions_of(f1))
        for (const Partition& lambda2 : partitions_of(f - f1))
          rows.push_back(table_row(lambda, lambda1, lambda2));
  }
  if (rows.empty())
    throw std::invalid_argument("table needs case arguments or --sizes");

  std::string format = opt.format.empty() ? "text" : opt.format;
  std::ostringstream out;
  if (format == "csv") {
    out << "lambda,lambda1,lambda2,multiplicity,full_unknowns,reduced_unknowns\n";
    for (const TableRow& r : rows)
      out << '"' << r.lambda.to_string() << "\",\"" << r.lambda1.to_string()
          << "\",\"" << r.lambda2.to_string() << "\"," << r.multiplicity << ","
          << r.full << "," << r.reduced << "\n";
  } else if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const TableRow& r : rows)
      j.push_back({{"lambda", to_json(r.lambda)},
                   {"lambda1", to_json(r.lambda1)},
                   {"lambda2", to_json(r.lambda2)},
                   {"multiplicity", r.multiplicity},
                   {"full_unknowns", r.full},
                   {"reduced_unknowns", r.reduced}});
    out << j.dump() << "\n";
  } else {
    out << "lambda          lambda1         lambda2         mult  full          reduced\n";
    for (const TableRow& r : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%-15s %-15s %-15s %-5ld %-13llu %llu\n",
                    r.lambda.to_string().c_str(), r.lambda1.to_string().c_str(),
                    r.lambda2.to_string().c_str(), r.multiplicity,
                    static_cast<unsigned long long>(r.full),
                    static_cast<unsigned long long>(r.reduced));
      out << line;
    }
  }
  emit(opt, out.str());
  return 0;
}

int cmd_dump_rep(const Options& opt) {
  Partition shape = Partition::parse(opt.shape);
  QParam q(opt.q);
  GeneratorMatrix g = generator_matrix(shape, opt.index, q);
  std::string format = opt.format.empty() ? "csv" : opt.format;
  std::ostringstream out;
  if (format == "json") {
    Eigen::MatrixXd m = g.dense();
    nlohmann::json matrix = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c)
        row.push_back(round_significant(m(r, c)));
      matrix.push_back(row);
    }
    out << nlohmann::json{{"shape", to_json(shape)},
                          {"index", opt.index},
                          {"q", round_significant(opt.q)},
                          {"dimension", g.dimension()},
                          {"matrix", matrix}}
               .dump()
        << "\n";
  } else if (format == "csv") {
    out << "row,col,value\n";
    Eigen::SparseMatrix<double, Eigen::RowMajor> m(g.sparse());
    for (int k = 0; k < m.outerSize(); ++k)
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, k);
           it; ++it)
        out << it.row() << "," << it.col() << ","
            << format_significant(round_significant(it.value())) << "\n";
  } else {
    Eigen::MatrixXd m = g.dense();
    out << "g_" << opt.index << " on [" << shape.to_string()
        << "], dimension " << g.dimension() << ", q=" << format_significant(opt.q)
        << "\n";
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c)
        out << (c ? " " : "") << format_significant(round_significant(m(r, c)));
      out << "\n";
    }
  }
  emit(opt, out.str());
  return 0;
}

int cmd_graph(const Options& opt) {
  SubductionProblem problem(Partition::parse(opt.lambda),
                            Partition::parse(opt.lambda1),
                            Partition::parse(opt.lambda2));
  QParam q(opt.q);
  SubductionSystem system =
      assemble_system(problem, q, mode_from_string(opt.mode));
  std::string format = opt.format.empty() ? "dot" : opt.format;
  if (format == "csv")
    emit(opt, to_triplet_csv(system));
  else
    emit(opt, to_dot(build_graph(system), system));
  return 0;
}

void add_problem_flags(CLI::App* cmd, Options& opt, bool with_mode) {
  cmd->add_option("--lambda", opt.lambda, "partition of f, e.g. 4,2")->required();
  cmd->add_option("--lambda1", opt.lambda1, "partition of f1")->required();
  cmd->add_option("--lambda2", opt.lambda2, "partition of f2")->required();
  cmd->add_option("--q", opt.q, "deformation parameter, real and positive");
  cmd->add_option("--tol", opt.tol, "relative rank tolerance");
  if (with_mode)
    cmd->add_option("--mode", opt.mode, "reduced|full")
        ->check(CLI::IsMember({"reduced", "full"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subduction coefficients for type-A Iwahori-Hecke algebras"};
  app.set_version_flag("--version", subduce::kVersion);
  app.require_subcommand(1);
  Options opt;

  CLI::App* solve = app.add_subcommand(
      "solve", "compute the coefficients for [lambda] -> [lambda1] x [lambda2]");
  add_problem_flags(solve, opt, true);
  solve->add_option("--format", opt.format, "json|text|csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  solve->add_option("--out", opt.out, "write output to this file");
  solve->add_option("--cache-dir", opt.cache_dir,
                    "cache canonical JSON here (SUBDUCE_CACHE_DIR overrides)");

  CLI::App* verify = app.add_subcommand(
      "verify", "solve and run the verification and oracle suites");
  add_problem_flags(verify, opt, true);
  verify->add_option("--format", opt.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", opt.out, "write output to this file");

  CLI::App* table = app.add_subcommand(
      "table", "multiplicities and unknown counts, arithmetic only");
  table->add_option("cases", opt.cases,
                    "triples lambda/lambda1/lambda2, e.g. 4,2/2,1/2,1");
  table->add_option("--sizes", opt.sizes, "enumerate all triples for f,f1");
  table->add_option("--format", opt.format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  table->add_option("--out", opt.out, "write output to this file");

  CLI::App* dump = app.add_subcommand("dump-rep",
                                      "matrix of one generator in the "
                                      "seminormal basis");
  dump->add_option("--shape", opt.shape, "partition labelling the irreducible")
      ->required();
  dump->add_option("--index", opt.index, "generator index, 1-based")->required();
  dump->add_option("--q", opt.q, "deformation parameter");
  dump->add_option("--format", opt.format, "csv|json|text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  dump->add_option("--out", opt.out, "write output to this file");

  CLI::App* graph = app.add_subcommand("graph",
                                       "subduction graph (DOT) or the sparse "
                                       "system (CSV)");
  add_problem_flags(graph, opt, true);
  graph->add_option("--format", opt.format, "dot|csv")
      ->check(CLI::IsMember({"dot", "csv"}));
  graph->add_option("--out", opt.out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (table->parsed()) return cmd_table(opt);
    if (dump->parsed()) return cmd_dump_rep(opt);
    if (graph->parsed()) return cmd_graph(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
