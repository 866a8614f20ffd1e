// skewlab command-line front end: experiment reproduction, square-code
// distinguishing, ReSkew key lifecycle, and work-factor estimates.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "skewlab/distinguisher.hpp"
#include "skewlab/reskew.hpp"

namespace {

using namespace skewlab;

unsigned default_threads() {
  if (const char* env = std::getenv("SKEWLAB_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

std::string histogram(const std::map<std::uint64_t, std::size_t>& h) {
  if (h.size() == 1) return std::to_string(h.begin()->first);
  std::ostringstream os;
  bool first = true;
  for (const auto& [dim, count] : h) {
    if (!first) os << ',';
    os << dim << ':' << count;
    first = false;
  }
  return os.str();
}

void echo_config(const std::string& line) { std::cerr << "# " << line << '\n'; }

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream f(path, mode);
  if (!f) throw Error("cannot open " + path);
  return f;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw Error("cannot write " + path);
  return f;
}

ReskewParams params_from_options(const std::string& set_name, std::uint64_t q, unsigned m,
                                 unsigned s, std::size_t n, std::size_t k) {
  if (!set_name.empty()) return ReskewParams::named(set_name);
  if (q == 0 || m == 0 || n == 0 || k == 0)
    throw Error("either --set or all of --q/--m/--s/--n/--k are required");
  auto [p, e] = split_prime_power(q);
  ReskewParams params;
  params.p = p;
  params.e = e;
  params.m = m;
  params.s = s;
  params.n = n;
  params.k = k;
  params.t = (n - k) / 2;
  params.validate();
  return params;
}

int run(int argc, char** argv) {
  CLI::App app{"toolkit for generalized skew/linearized Reed-Solomon codes"};
  app.require_subcommand(1);

  // ---- experiment ----
  std::uint64_t ex_q = 0;
  unsigned ex_m = 0;
  std::size_t ex_n = 0, ex_k = 0, ex_trials = 10;
  std::uint64_t ex_seed = 0;
  unsigned ex_threads = default_threads();
  auto* experiment = app.add_subcommand("experiment", "square-code dimensions of structured "
                                                      "versus random codes");
  experiment->add_option("--q", ex_q, "subfield size (prime power)")->required();
  experiment->add_option("--m", ex_m, "extension degree")->required();
  experiment->add_option("--n", ex_n, "code length")->required();
  experiment->add_option("--k", ex_k, "code dimension")->required();
  experiment->add_option("--trials", ex_trials, "number of independent trials");
  experiment->add_option("--seed", ex_seed, "master seed");
  experiment->add_option("--threads", ex_threads, "worker threads");

  // ---- distinguish ----
  std::string di_matrix;
  unsigned di_m = 0;
  std::int64_t di_s = -1;
  auto* distinguish = app.add_subcommand("distinguish", "square-code verdict for a generator "
                                                        "matrix file");
  distinguish->add_option("--matrix", di_matrix, "matrix file")->required();
  distinguish->add_option("--m", di_m, "extension degree hypothesis")->required();
  distinguish->add_option("--s", di_s, "number of shortened coordinates");

  // ---- reskew ----
  auto* reskew = app.add_subcommand("reskew", "Niederreiter-style public-key encryption");
  reskew->require_subcommand(1);
  std::string rk_set, rk_pk, rk_sk, rk_ct, rk_msg, rk_msg_out, rk_out;
  std::uint64_t rk_q = 0, rk_seed = 0, rk_msg_seed = 0;
  unsigned rk_m = 0, rk_s = 1;
  std::size_t rk_n = 0, rk_k = 0;
  bool rk_have_msg_seed = false;

  auto add_param_opts = [&](CLI::App* cmd) {
    cmd->add_option("--set", rk_set, "named parameter set");
    cmd->add_option("--q", rk_q, "subfield size (prime power)");
    cmd->add_option("--m", rk_m, "extension degree");
    cmd->add_option("--s", rk_s, "automorphism exponent");
    cmd->add_option("--n", rk_n, "code length");
    cmd->add_option("--k", rk_k, "code dimension");
  };

  auto* keygen_cmd = reskew->add_subcommand("keygen", "generate a key pair");
  add_param_opts(keygen_cmd);
  keygen_cmd->add_option("--seed", rk_seed, "sampling seed");
  keygen_cmd->add_option("--pk", rk_pk, "public key output")->required();
  keygen_cmd->add_option("--sk", rk_sk, "secret key output")->required();

  auto* encrypt_cmd = reskew->add_subcommand("encrypt", "encrypt a weight-t message");
  encrypt_cmd->add_option("--pk", rk_pk, "public key file")->required();
  encrypt_cmd->add_option("--ct", rk_ct, "ciphertext output")->required();
  encrypt_cmd->add_option("--msg", rk_msg, "message file (text encodings)");
  encrypt_cmd->add_option("--msg-seed", rk_msg_seed, "sample a fresh message from this seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { rk_have_msg_seed = true; });
  encrypt_cmd->add_option("--msg-out", rk_msg_out, "write the sampled message here");

  auto* decrypt_cmd = reskew->add_subcommand("decrypt", "decrypt a ciphertext");
  decrypt_cmd->add_option("--sk", rk_sk, "secret key file")->required();
  decrypt_cmd->add_option("--ct", rk_ct, "ciphertext file")->required();
  decrypt_cmd->add_option("--out", rk_out, "message output file")->required();

  auto* sizes_cmd = reskew->add_subcommand("sizes", "payload sizes in bytes");
  add_param_opts(sizes_cmd);

  // ---- estimate ----
  std::uint64_t es_n = 0, es_k = 0, es_t = 0;
  auto* estimate = app.add_subcommand("estimate", "information-set decoding work factor");
  estimate->add_option("--n", es_n, "code length")->required();
  estimate->add_option("--k", es_k, "code dimension")->required();
  estimate->add_option("--t", es_t, "error weight")->required();

  CLI11_PARSE(app, argc, argv);

  if (*experiment) {
    std::ostringstream cfg;
    cfg << "skewlab experiment --q " << ex_q << " --m " << ex_m << " --n " << ex_n << " --k "
        << ex_k << " --trials " << ex_trials << " --seed " << ex_seed << " --threads "
        << ex_threads;
    echo_config(cfg.str());
    std::cout << "q m n k gsrs_dim random_dim\n";
    if (ex_trials > 0) {
      ExperimentRow row = experiment_row(ex_q, ex_m, ex_n, ex_k, ex_trials, ex_seed, ex_threads);
      std::cout << ex_q << ' ' << ex_m << ' ' << ex_n << ' ' << ex_k << ' '
                << histogram(row.gsrs_dims) << ' ' << histogram(row.random_dims) << '\n';
    }
    return 0;
  }

  if (*distinguish) {
    std::ostringstream cfg;
    cfg << "skewlab distinguish --matrix " << di_matrix << " --m " << di_m;
    if (di_s >= 0) cfg << " --s " << di_s;
    echo_config(cfg.str());
    auto in = open_input(di_matrix);
    ParsedMatrix pm = read_matrix(in);
    Matrix g = pm.to_matrix();
    if (rank(g) != g.rows()) throw Error("matrix file is rank-deficient");
    Verdict v = di_s >= 0 ? shortened_distinguish(g, di_m, static_cast<std::size_t>(di_s))
                          : naive_distinguish(g, di_m);
    std::cout << to_string(v.decision) << ' ' << v.observed_dim << ' ' << v.expected_structured
              << ' ' << v.expected_random << ' ' << v.shortening_used << '\n';
    return 0;
  }

  if (*keygen_cmd) {
    auto params = params_from_options(rk_set, rk_q, rk_m, rk_s, rk_n, rk_k);
    std::ostringstream cfg;
    cfg << "skewlab reskew keygen --seed " << rk_seed << " --pk " << rk_pk << " --sk " << rk_sk;
    if (!rk_set.empty()) cfg << " --set " << rk_set;
    echo_config(cfg.str());
    Rng rng(rk_seed);
    Keypair kp = keygen(params, rng);
    {
      auto f = open_output(rk_pk, std::ios::binary);
      write_public_key(f, kp.pk);
    }
    {
      auto f = open_output(rk_sk, std::ios::binary);
      write_secret_key(f, kp.sk);
    }
    std::cerr << "# resamples " << kp.resamples << '\n';
    return 0;
  }

  if (*encrypt_cmd) {
    std::ostringstream cfg;
    cfg << "skewlab reskew encrypt --pk " << rk_pk << " --ct " << rk_ct;
    if (!rk_msg.empty()) cfg << " --msg " << rk_msg;
    if (rk_have_msg_seed) cfg << " --msg-seed " << rk_msg_seed;
    echo_config(cfg.str());
    auto pk_in = open_input(rk_pk, std::ios::binary);
    PublicKey pk = read_public_key(pk_in);
    std::vector<FieldElement> msg;
    if (!rk_msg.empty()) {
      auto f = open_input(rk_msg);
      msg = read_message(f, *pk.field, pk.params.n);
    } else if (rk_have_msg_seed) {
      Rng rng(rk_msg_seed);
      msg = sample_message(pk.params, *pk.field, rng);
      if (!rk_msg_out.empty()) {
        auto f = open_output(rk_msg_out);
        write_message(f, msg);
      }
    } else {
      throw Error("either --msg or --msg-seed is required");
    }
    Ciphertext ct = encrypt(pk, msg);
    auto f = open_output(rk_ct, std::ios::binary);
    write_ciphertext(f, ct);
    return 0;
  }

  if (*decrypt_cmd) {
    std::ostringstream cfg;
    cfg << "skewlab reskew decrypt --sk " << rk_sk << " --ct " << rk_ct << " --out " << rk_out;
    echo_config(cfg.str());
    auto sk_in = open_input(rk_sk, std::ios::binary);
    SecretKey sk = read_secret_key(sk_in);
    auto ct_in = open_input(rk_ct, std::ios::binary);
    Ciphertext ct = read_ciphertext(ct_in);
    auto msg = decrypt(sk, ct);
    auto f = open_output(rk_out);
    write_message(f, msg);
    return 0;
  }

  if (*sizes_cmd) {
    auto params = params_from_options(rk_set, rk_q, rk_m, rk_s, rk_n, rk_k);
    SizeTriple st = sizes(params);
    std::cout << st.pk_bytes << ' ' << st.sk_bytes << ' ' << st.ct_bytes << '\n';
    return 0;
  }

  if (*estimate) {
    if (es_t > es_n - es_k) throw Error("t must be at most n - k");
    std::printf("%.2f\n", prange_log2(es_n, es_k, es_t));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const skewlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
