#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "polyfermion/config.hpp"
#include "polyfermion/error.hpp"
#include "polyfermion/estimate.hpp"
#include "polyfermion/hermite.hpp"
#include "polyfermion/qsp.hpp"
#include "polyfermion/synth.hpp"

using namespace polyfermion;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::invalid_argument, "cannot write " + path);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// Code selection shared by the code-level subcommands.
struct CodeArgs {
  std::string params_file;
  u64 modes = 0;
  u64 fermions = 0;
  u64 raw_g = 0;
  std::string degree = "auto";
  u64 lprime = 0;
  bool margin = false;

  void attach(CLI::App* app) {
    app->add_option("--params", params_file, "CodeParams record");
    app->add_option("--modes", modes, "mode count M");
    app->add_option("--fermions", fermions, "fermion count F");
    app->add_option("--raw-g", raw_g, "use this G directly");
    app->add_option("--degree", degree, "degree D, or auto");
    app->add_option("--lprime", lprime, "force the block size L'");
    app->add_flag("--margin", margin, "derive G from F+4");
  }

  CodeParams resolve() const {
    if (!params_file.empty()) return parse_params(read_file(params_file));
    CodeOptions opt;
    opt.add_four_margin = margin;
    u64 fg = fermions;
    if (raw_g) {
      opt.use_raw_G = true;
      fg = raw_g;
    }
    if (fg == 0) throw Error(Errc::invalid_argument, "give --fermions or --raw-g (or --params)");
    if (lprime) opt.lprime = lprime;
    if (degree == "auto") {
      if (modes == 0) throw Error(Errc::invalid_argument, "--degree auto needs --modes");
      return optimal_degree(modes, fg, opt).params;
    }
    const u64 D = std::stoull(degree);
    u64 M = modes;
    if (M == 0) {
      // With a forced block size every polynomial gets a mode.
      if (!lprime) throw Error(Errc::invalid_argument, "give --modes (or --lprime)");
      M = 1;
      for (u64 k = 0; k <= D; ++k) M *= lprime;
    }
    return derive_params(M, fg, D, opt);
  }
};

InterpKind kind_of(const std::string& s) {
  if (s == "majority") return InterpKind::majority;
  if (s == "ctrl_phase" || s == "ctrl-phase") return InterpKind::ctrl_phase;
  throw Error(Errc::invalid_argument, "unknown kind '" + s + "'");
}

std::string amplitudes(const StateVector& psi, double cutoff) {
  std::ostringstream os;
  os.precision(12);
  os << "index,real,imag\n";
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (std::abs(psi[i]) > cutoff) os << i << "," << psi[i].real() << "," << psi[i].imag() << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial fermion-to-qubit code compiler and resource estimator"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, output;
  std::vector<std::string> overrides;
  int jobs = 0;
  app.add_option("--config", config_path, "flat key = value settings file");
  app.add_option("--set", overrides, "override a config key (key=value)");
  app.add_option("--jobs", jobs, "worker threads for scans");
  app.add_option("-o,--output", output, "output path (default stdout)");

  CodeArgs code;

  auto* params = app.add_subcommand("params", "derive code parameters");
  code.attach(params);

  auto* codebook = app.add_subcommand("codebook", "list elementary codewords");
  code.attach(codebook);
  bool hex = false;
  codebook->add_flag("--hex", hex, "packed hexadecimal instead of blocks");

  auto* enc = app.add_subcommand("encode", "BK strings to codewords");
  code.attach(enc);
  std::string input;
  enc->add_option("--input", input, "one BK string per line")->required();
  enc->add_flag("--hex", hex, "packed hexadecimal output");

  auto* dec = app.add_subcommand("decode", "codewords to BK strings");
  code.attach(dec);
  dec->add_option("--input", input, "one codeword per line (blocks or hex)")->required();

  auto* ver = app.add_subcommand("verify", "check code integrity");
  code.attach(ver);
  std::string vmode = "exhaustive";
  u64 samples = 10000, seed = 1;
  ver->add_option("--mode", vmode, "exhaustive or sampled");
  ver->add_option("--samples", samples);
  ver->add_option("--seed", seed);

  auto* sparity = app.add_subcommand("synth-parity", "encoded parity program");
  code.attach(sparity);
  int size = 0;
  u64 mode = 0;
  sparity->add_option("--size", size, "bare support of this size on qubits 0..size-1");
  sparity->add_option("--mode", mode, "mode whose support set is used");

  auto* sterm = app.add_subcommand("synth-term", "encoded Pauli, rotation or Hamiltonian bundle");
  code.attach(sterm);
  std::string pauli, hamiltonian, out_dir;
  double theta = 0;
  bool with_theta = false, audit = false;
  sterm->add_option("--pauli", pauli, "e.g. \"+1 X{0} Z{3}\"");
  sterm->add_option("--theta", theta, "rotation angle for e^{i theta T}")->each([&](const std::string&) {
    with_theta = true;
  });
  sterm->add_option("--hamiltonian", hamiltonian, "term file \"coeff : i^ j\"");
  sterm->add_option("--out-dir", out_dir, "write one program per monomial");
  sterm->add_flag("--audit", audit, "require a Hermitian Hamiltonian");

  auto* shop = app.add_subcommand("synth-hop", "hop gate between two modes");
  code.attach(shop);
  u64 hi = 0, hj = 1;
  double phi = 0;
  shop->add_option("--i", hi)->required();
  shop->add_option("--j", hj)->required();
  shop->add_option("--phi", phi);

  auto* smc = app.add_subcommand("synth-mcphase", "n-qubit controlled phase");
  int n = 2;
  bool as_not = false;
  smc->add_option("--n", n)->required();
  smc->add_flag("--not", as_not, "multiply-controlled NOT on the last qubit");

  auto* route = app.add_subcommand("route", "route a program on a line");
  std::string program_file, order;
  route->add_option("--program", program_file)->required();
  route->add_option("--order", order, "comma-separated line order (default identity)");

  auto* sim = app.add_subcommand("simulate", "statevector simulation");
  u64 basis = 0;
  double cutoff = 1e-12;
  sim->add_option("--program", program_file)->required();
  sim->add_option("--basis", basis, "initial basis index");
  sim->add_option("--cutoff", cutoff, "hide amplitudes below this");

  auto* shermite = app.add_subcommand("scan-hermite", "least local minima of Hermite interpolants");
  std::string kind = "majority";
  int from = 3, to = 3, step = 0;
  shermite->add_option("--kind", kind);
  shermite->add_option("--from", from);
  shermite->add_option("--to", to);
  shermite->add_option("--step", step, "default 2 for majority, 1 otherwise");

  auto* sthr = app.add_subcommand("scan-threshold", "prime threshold scan");
  u64 lmax = 501;
  sthr->add_option("--lmax", lmax);

  auto* est = app.add_subcommand("estimate", "optimal code and simulation cost");
  u64 emodes = 0, efermions = 0;
  std::string skind = "qdrift";
  double lambda = 0, t_or_delta = 0, eps_or_eta = 0;
  est->add_option("--modes", emodes)->required();
  est->add_option("--fermions", efermions)->required();
  est->add_option("--kind", skind, "qdrift or rpe");
  est->add_option("--lambda", lambda);
  est->add_option("--time,--delta", t_or_delta, "evolution time (qdrift) or precision (rpe)");
  est->add_option("--epsilon,--eta", eps_or_eta, "error (qdrift) or failure probability (rpe)");
  bool margin_est = false;
  est->add_flag("--margin", margin_est, "derive G from F+4");

  auto* cmp = app.add_subcommand("compare", "encoding comparison table");
  bool csv = false;
  cmp->add_option("--modes", emodes)->required();
  cmp->add_option("--fermions", efermions)->required();
  cmp->add_flag("--csv", csv);

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(Errc::invalid_argument, "--set expects key=value");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (jobs > 0) cfg.jobs = jobs;
    QspOptions qopt;
    qopt.digits = cfg.qsp_digits;
    SimOptions sopt;
    sopt.max_qubits = cfg.sim_cap;

    if (params->parsed()) {
      emit(output, serialize_params(code.resolve()));
    } else if (codebook->parsed()) {
      const CodeParams p = code.resolve();
      std::string text;
      for (u64 m = 0; m < p.M; ++m) {
        const Codeword w = elementary_codeword(m, p);
        text += (hex ? w.to_hex() : codeword_string(w, p)) + "\n";
      }
      emit(output, text);
    } else if (enc->parsed()) {
      const CodeParams p = code.resolve();
      std::string text;
      for (const auto& line : lines_of(read_file(input))) {
        const Codeword w = encode(Bits::from_string(strip_spaces(line)), p);
        text += (hex ? w.to_hex() : codeword_string(w, p)) + "\n";
      }
      emit(output, text);
    } else if (dec->parsed()) {
      const CodeParams p = code.resolve();
      std::string text;
      for (const auto& line : lines_of(read_file(input))) {
        const std::string s = strip_spaces(line);
        const bool is_bits = s.find_first_not_of("01") == std::string::npos && s.size() == p.Q;
        const Codeword w = is_bits ? Bits::from_string(s) : Bits::from_hex(s, p.Q);
        text += decode(w, p).to_string() + "\n";
      }
      emit(output, text);
    } else if (ver->parsed()) {
      const CodeParams p = code.resolve();
      const VerifyReport r =
          verify_code(p, vmode == "sampled" ? VerifyMode::sampled : VerifyMode::exhaustive, samples, seed);
      std::ostringstream os;
      os << "pass = " << (r.pass ? 1 : 0) << "\nexhaustive = " << (r.exhaustive ? 1 : 0)
         << "\ncodewords = " << r.codewords << "\npairs = " << r.pairs << "\nmax_overlap = " << r.max_overlap
         << "\nsums_checked = " << r.sums_checked << "\n";
      if (!r.pass) os << "failure = " << r.failure << "\n";
      emit(output, os.str());
      return r.pass ? 0 : 1;
    } else if (sparity->parsed()) {
      GateProgram g;
      if (size > 0) {
        std::vector<int> q(size);
        for (int k = 0; k < size; ++k) q[k] = k;
        g = synth_parity({q, size}, size + 1);
      } else {
        const EncodedLayout lay = make_layout(code.resolve(), false);
        PauliSupport z;
        z.z = {mode};
        g = encode_pauli(z, lay);
      }
      emit(output, serialize_program(g));
    } else if (sterm->parsed()) {
      const CodeParams p = code.resolve();
      const EncodedLayout lay = make_layout(p, true);
      if (!hamiltonian.empty()) {
        const auto terms = parse_hamiltonian(read_file(hamiltonian), audit);
        const auto monos = majorana_decompose(terms);
        std::ostringstream os;
        os.precision(17);
        os << "index,monomial,pauli,coefficient,lambda_contribution,single,controlled,doubly_controlled\n";
        int idx = 0;
        for (const auto& m : monos) {
          if (m.factors.empty()) continue;
          const PauliSupport s = monomial_support(m, p.M);
          const TermCost c = term_cost(s, p);
          // A Hermitian monomial pairs with a real multiple of its Pauli.
          const std::complex<double> h = m.coefficient * s.phase_value();
          os << idx << "," << m.to_string() << "," << s.to_string() << "," << h.real() << ","
             << std::abs(m.coefficient) << "," << c.rotation.single_qubit << "," << c.rotation.controlled << ","
             << c.rotation.doubly_controlled << "\n";
          if (!out_dir.empty()) {
            PauliSupport bare = s;
            bare.phase = 0;
            emit(out_dir + "/term_" + std::to_string(idx) + ".prog", serialize_program(encode_pauli(bare, lay)));
          }
          ++idx;
        }
        os << "# lambda = " << lambda_norm(monos) << "\n";
        emit(output, os.str());
      } else {
        if (pauli.empty()) throw Error(Errc::invalid_argument, "give --pauli or --hamiltonian");
        const EncodedTerm t = encode_term(PauliSupport::parse(pauli), 1.0, lay);
        emit(output, serialize_program(with_theta ? synth_rotation(t, theta, lay) : t.program));
      }
    } else if (shop->parsed()) {
      emit(output, serialize_program(synth_hop(hi, hj, phi, make_layout(code.resolve(), true))));
    } else if (smc->parsed()) {
      emit(output, serialize_program(as_not ? synth_multi_ctrl_not(n, qopt) : synth_multi_ctrl_phase(n, qopt)));
    } else if (route->parsed()) {
      const GateProgram g = parse_program(read_file(program_file));
      std::vector<int> line;
      if (order.empty()) {
        for (int q = 0; q < g.qubit_count; ++q) line.push_back(q);
      } else {
        std::istringstream is(order);
        std::string tok;
        while (std::getline(is, tok, ',')) line.push_back(std::stoi(tok));
      }
      const RoutedProgram r = route_linear(g, line);
      std::cerr << "total_swaps = " << r.total_swaps << "\n";
      emit(output, serialize_program(r.program));
    } else if (sim->parsed()) {
      const GateProgram g = parse_program(read_file(program_file));
      emit(output, amplitudes(simulate(g, basis, sopt), cutoff));
    } else if (shermite->parsed()) {
      const InterpKind k = kind_of(kind);
      if (step == 0) step = k == InterpKind::majority ? 2 : 1;
      emit(output, scan_csv(scan_hermite(k, from, to, step, cfg.precision_bits, cfg.jobs)));
    } else if (sthr->parsed()) {
      std::ostringstream os;
      os << "G,L,max_k\n";
      for (const auto& r : threshold_scan(lmax)) os << r.G << "," << r.L << "," << r.max_k << "\n";
      emit(output, os.str());
    } else if (est->parsed()) {
      CodeOptions opt;
      opt.add_four_margin = margin_est;
      const OptimalDegree od = optimal_degree(emodes, efermions, opt);
      std::ostringstream os;
      os << serialize_params(od.params);
      os << "min_qubits = " << min_qubits(emodes, efermions) << "\n";
      if (lambda > 0) {
        const SimKind sk = skind == "rpe" ? SimKind::rpe : SimKind::qdrift;
        const SimCost c = sim_cost(sk, lambda, t_or_delta, eps_or_eta, od.params, {cfg.cost_c, cfg.cost_c_prime});
        os << "# cost constants are configuration, not derived values\n"
           << "cost_c = " << cfg.cost_c << "\ncost_c_prime = " << cfg.cost_c_prime << "\n"
           << "rotations = " << c.rotations << "\ncircuits = " << c.circuits
           << "\nper_rotation_doubly_controlled = " << c.per_rotation_doubly_controlled
           << "\ntotal_doubly_controlled = " << c.total_doubly_controlled << "\n";
      }
      emit(output, os.str());
    } else if (cmp->parsed()) {
      const auto rows = compare_encodings(emodes, efermions);
      emit(output, csv ? rows_csv(rows) : rows_table(rows));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
