#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <sstream>

#include "json.hpp"
#include "kirbylab/cork.hpp"
#include "kirbylab/rbd.hpp"
#include "kirbylab/script.hpp"

namespace kirby::script {

namespace {

using handles::Presentation;

std::string parity_word(lattice::Parity p) {
  return p == lattice::Parity::Even ? "even" : "odd";
}

// Snapshot of the most recent twist, for a later "certify" statement.
struct TwistRecord {
  std::string cork_name;
  Presentation before, after;
};

class Replayer {
 public:
  explicit Replayer(const Script& s) : script_(s) {
    report_.script_name = s.name.empty() ? "script" : s.name;
  }

  ReplayResult run() {
    for (std::size_t i = 0; i < script_.statements.size(); ++i) {
      const Statement& st = script_.statements[i];
      if (std::holds_alternative<StComment>(st.payload) ||
          std::holds_alternative<StBlank>(st.payload))
        continue;
      index_ = static_cast<int>(i);
      line_ = st.line;
      text_ = print(st);
      std::visit([this](const auto& payload) { dispatch(payload); },
                 st.payload);
      ++report_.statements;
    }
    finalize();
    ReplayResult out;
    out.report = report_;
    if (touched_) out.final_state = cur();
    return out;
  }

 private:
  // ---- bookkeeping ----------------------------------------------------

  Presentation& cur() {
    touched_ = true;
    return states_[current_];
  }

  void ok(const std::string& detail = "") {
    report_.entries.push_back({index_, line_, text_, "ok", detail});
  }
  void fail(const std::string& detail) {
    report_.entries.push_back({index_, line_, text_, "fail", detail});
    ++report_.failures;
  }

  // Collects assumption tokens a move just appended to the state.
  void absorb_assumptions(const Presentation& x, std::size_t from) {
    for (std::size_t i = from; i < x.assumptions.size(); ++i)
      report_.assumptions.push_back(x.assumptions[i]);
  }

  // Applies a throwing engine operation; on error the statement becomes a
  // fail entry and the state is left as it was.
  template <typename F>
  void apply(F&& op) {
    Presentation& state = cur();
    const std::size_t n_assume = state.assumptions.size();
    try {
      Presentation next = op(state);
      absorb_assumptions(next, n_assume);
      state = std::move(next);
      ok();
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  std::optional<handles::HomologyClass> resolve(const Combo& combo,
                                                std::string& err) {
    Presentation& state = cur();
    if (!state.ambient.has_value()) {
      err = "no ambient basis to resolve the class against";
      return std::nullopt;
    }
    handles::HomologyClass c;
    c.coeff.assign(state.ambient->labels.size(), 0);
    for (const auto& t : combo) {
      if (!state.ambient->has(t.label)) {
        err = "unknown ambient generator '" + t.label + "'";
        return std::nullopt;
      }
      c.coeff[static_cast<std::size_t>(state.ambient->index(t.label))] +=
          t.coeff;
    }
    return c;
  }

  // ---- statement handlers ---------------------------------------------

  void dispatch(const StBegin& s) {
    states_[s.name] = Presentation{};
    current_ = s.name;
    touched_ = true;
    ok("state '" + s.name + "' started");
  }

  void dispatch(const StAmbient& s) {
    Presentation& state = cur();
    try {
      if (!state.ambient.has_value()) state.ambient = handles::AmbientBasis{};
      state.ambient->extend(s.label, s.square);
      ok();
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void dispatch(const StCounts& s) {
    Presentation& state = cur();
    if (s.zero < 0 || s.one < 0 || s.three < 0 || s.four < 0) {
      fail("handle counts must be nonnegative");
      return;
    }
    for (const auto& h : state.two) {
      if (static_cast<Int>(h.links.size()) != s.one) {
        fail("handle '" + h.label +
             "' already carries a linking row of a different length");
        return;
      }
    }
    state.zero_handles = s.zero;
    state.one_handles = static_cast<int>(s.one);
    state.three_handles = s.three;
    state.four_handles = s.four;
    ok();
  }

  void dispatch(const StClosed& s) {
    cur().closed = s.value;
    ok();
  }

  void dispatch(const StHandle& s) {
    Presentation& state = cur();
    if (state.handle_index(s.label) >= 0) {
      fail("duplicate handle label '" + s.label + "'");
      return;
    }
    handles::TwoHandle h;
    h.label = s.label;
    if (s.cls.has_value()) {
      std::string err;
      auto c = resolve(*s.cls, err);
      if (!c.has_value()) {
        fail(err);
        return;
      }
      h.cls = std::move(*c);
      const Int sq = handles::square(*state.ambient, *h.cls);
      if (s.framing.has_value() && *s.framing != sq) {
        fail("declared framing " + std::to_string(*s.framing) +
             " does not equal the class square " + std::to_string(sq));
        return;
      }
      h.framing = sq;
    } else {
      h.framing = s.framing.value_or(0);
    }
    if (s.links.has_value()) {
      if (static_cast<int>(s.links->size()) != state.one_handles) {
        fail("linking row has " + std::to_string(s.links->size()) +
             " entries for " + std::to_string(state.one_handles) +
             " 1-handles");
        return;
      }
      h.links = *s.links;
    } else {
      h.links.assign(static_cast<std::size_t>(state.one_handles), 0);
    }
    state.two.push_back(std::move(h));
    ok();
  }

  void dispatch(const StBlowup& s) {
    apply([&](const Presentation& x) {
      return handles::blow_up(x, s.sign, s.label, s.strands);
    });
  }

  void dispatch(const StBlowdown& s) {
    apply([&](const Presentation& x) { return handles::blow_down(x, s.label); });
  }

  void dispatch(const StSlide& s) {
    apply([&](const Presentation& x) {
      return handles::slide(x, s.moving, s.over, s.sign, s.lk);
    });
  }

  void dispatch(const StCancel& s) {
    apply([&](const Presentation& x) {
      return handles::cancel_pair(x, s.one_index, s.two_label, s.token);
    });
  }

  void dispatch(const StExchange& s) {
    const std::string label =
        s.as_label.value_or("x" + std::to_string(s.one_index));
    apply([&](const Presentation& x) {
      return handles::zero_dot_exchange(x, s.one_index, label, s.once_token);
    });
  }

  void dispatch(const StRbd& s) {
    Presentation& state = cur();
    rbd::CpEmbedding emb{s.p, s.labels};
    const std::string bp = s.bp_label.value_or("bp" + std::to_string(s.p));
    try {
      const report::CheckReport rep = rbd::verify_embedding(state, emb);
      report_.checks += rep.checks();
      if (!rep.passed()) {
        const report::Item* f = rep.first_failure();
        ++report_.failures;
        report_.entries.push_back(
            {index_, line_, text_, "fail",
             "embedding check failed: " + f->what +
                 (f->detail.empty() ? "" : " (" + f->detail + ")")});
        return;
      }
      const std::size_t n_assume = state.assumptions.size();
      Presentation next = rbd::rational_blowdown(state, emb, bp);
      absorb_assumptions(next, n_assume);
      state = std::move(next);
      std::string detail;
      if (state.ledger.has_value())
        detail = "ledger now rank=" + std::to_string(state.ledger->rank) +
                 " sigma=" + std::to_string(state.ledger->sig) + " parity=" +
                 parity_word(state.ledger->parity);
      ok(detail);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void dispatch(const StCork& s) {
    cork::CorkModel model{s.name, s.link};
    const report::CheckReport rep = cork::verify_contractible(model);
    report_.checks += rep.checks();
    for (const auto& item : rep.items)
      if (item.outcome == report::Outcome::Assumed)
        report_.assumptions.push_back(item.what);
    corks_[s.name] = model;
    if (rep.passed()) {
      ok("contractibility shadow verified (" + std::to_string(rep.checks()) +
         " checks)");
    } else {
      const report::Item* f = rep.first_failure();
      fail("cork model check failed: " + f->what +
           (f->detail.empty() ? "" : " (" + f->detail + ")"));
    }
  }

  void dispatch(const StTwist& s) {
    auto it = corks_.find(s.cork_name);
    if (it == corks_.end()) {
      fail("no cork named '" + s.cork_name + "'");
      return;
    }
    Presentation& state = cur();
    try {
      Presentation before = state;
      Presentation after = cork::cork_twist(state, s.one_index, s.two_label);
      last_twist_ = TwistRecord{s.cork_name, before, after};
      state = std::move(after);
      std::string detail = "presentation unchanged by the twist";
      if (auto led = handles::effective_ledger(state))
        detail += "; ledger rank=" + std::to_string(led->rank) + " sigma=" +
                  std::to_string(led->sig) + " parity=" +
                  parity_word(led->parity) + " preserved";
      ok(detail);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void dispatch(const StCertify& s) {
    if (!last_twist_.has_value()) {
      fail("no twist to certify");
      return;
    }
    cork::CorkCertificate cert;
    cert.before = last_twist_->before;
    cert.after = last_twist_->after;
    cert.cork = corks_[last_twist_->cork_name];
    cert.external_facts = s.facts;
    const report::CheckReport rep = cork::check_certificate(cert);
    report_.checks += rep.checks();
    for (const auto& item : rep.items) {
      if (item.outcome != report::Outcome::Assumed) continue;
      // The certificate re-verifies the cork model; don't list the model's
      // standing assumptions a second time.
      if (std::find(report_.assumptions.begin(), report_.assumptions.end(),
                    item.what) == report_.assumptions.end())
        report_.assumptions.push_back(item.what);
    }
    if (rep.passed()) {
      ok(std::to_string(rep.checks()) + " machine checks, " +
         std::to_string(rep.assumptions()) + " imported facts");
    } else {
      const report::Item* f = rep.first_failure();
      fail("certificate check failed: " + f->what +
           (f->detail.empty() ? "" : " (" + f->detail + ")"));
    }
  }

  void dispatch(const StAssume& s) {
    cur().assumptions.push_back(s.text);
    report_.assumptions.push_back(s.text);
    ok();
  }

  void dispatch(const StAssert& s) {
    ++report_.checks;
    try {
      run_assert(s);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void run_assert(const StAssert& s) {
    Presentation& state = cur();
    switch (s.kind) {
      case AssertKind::B2: {
        const Int got = handles::invariants(state).b2;
        got == s.a ? ok("b2 = " + std::to_string(got))
                   : fail("b2 is " + std::to_string(got) + ", expected " +
                          std::to_string(s.a));
        return;
      }
      case AssertKind::Chi: {
        const Int got = handles::euler_characteristic(state);
        got == s.a ? ok("chi = " + std::to_string(got))
                   : fail("chi is " + std::to_string(got) + ", expected " +
                          std::to_string(s.a));
        return;
      }
      case AssertKind::Sigma: {
        const auto led = handles::effective_ledger(state);
        if (!led.has_value()) {
          fail("no form data to take a signature from");
        } else if (led->sig == s.a) {
          ok("sigma = " + std::to_string(led->sig));
        } else {
          fail("sigma is " + std::to_string(led->sig) + ", expected " +
               std::to_string(s.a));
        }
        return;
      }
      case AssertKind::Parity: {
        const auto led = handles::effective_ledger(state);
        if (!led.has_value()) {
          fail("no form data to take a parity from");
        } else if (led->parity == s.parity) {
          ok("parity = " + parity_word(led->parity));
        } else {
          fail("parity is " + parity_word(led->parity) + ", expected " +
               parity_word(s.parity));
        }
        return;
      }
      case AssertKind::Framing: {
        const int hi = state.handle_index(s.label);
        if (hi < 0) {
          fail("no handle labeled '" + s.label + "'");
          return;
        }
        const Int got = state.two[static_cast<std::size_t>(hi)].framing;
        got == s.a ? ok("framing(" + s.label + ") = " + std::to_string(got))
                   : fail("framing of '" + s.label + "' is " +
                          std::to_string(got) + ", expected " +
                          std::to_string(s.a));
        return;
      }
      case AssertKind::Class: {
        const int hi = state.handle_index(s.label);
        if (hi < 0) {
          fail("no handle labeled '" + s.label + "'");
          return;
        }
        const auto& h = state.two[static_cast<std::size_t>(hi)];
        if (!h.cls.has_value()) {
          fail("handle '" + s.label + "' carries no class");
          return;
        }
        std::string err;
        const auto want = resolve(s.combo, err);
        if (!want.has_value()) {
          fail(err);
          return;
        }
        if (*h.cls == *want) {
          ok("class(" + s.label + ") = " + h.cls->str(*state.ambient));
        } else {
          fail("class of '" + s.label + "' is " +
               h.cls->str(*state.ambient) + ", expected " +
               want->str(*state.ambient));
        }
        return;
      }
      case AssertKind::Ledger: {
        const auto led = handles::effective_ledger(state);
        if (!led.has_value()) {
          fail("no form data for a ledger comparison");
        } else if (led->rank == s.a && led->sig == s.b &&
                   led->parity == s.parity) {
          ok("ledger rank=" + std::to_string(led->rank) + " sigma=" +
             std::to_string(led->sig) + " parity=" +
             parity_word(led->parity));
        } else {
          fail("ledger is rank=" + std::to_string(led->rank) + " sigma=" +
               std::to_string(led->sig) + " parity=" +
               parity_word(led->parity) + ", expected rank=" +
               std::to_string(s.a) + " sigma=" + std::to_string(s.b) +
               " parity=" + parity_word(s.parity));
        }
        return;
      }
      case AssertKind::Model: {
        const auto led = handles::effective_ledger(state);
        if (!led.has_value() || !led->realized.has_value()) {
          fail("no realized diagonal model on record");
        } else if (led->realized->first == s.a &&
                   led->realized->second == s.b) {
          ok("model " + std::to_string(s.a) + "<+1> + " +
             std::to_string(s.b) + "<-1>");
        } else {
          fail("model is " + std::to_string(led->realized->first) +
               "<+1> + " + std::to_string(led->realized->second) +
               "<-1>, expected " + std::to_string(s.a) + "<+1> + " +
               std::to_string(s.b) + "<-1>");
        }
        return;
      }
      case AssertKind::Gram: {
        const IntSymMatrix got = handles::gram_of(state, s.labels);
        const IntSymMatrix want = rbd::cp_matrix(s.a);
        if (got.n != want.n) {
          fail("chain has " + std::to_string(got.n) + " classes, expected " +
               std::to_string(want.n));
          return;
        }
        for (int i = 0; i < got.n; ++i) {
          for (int j = 0; j < got.n; ++j) {
            if (got.at(i, j) != want.at(i, j)) {
              fail("entry (" + s.labels[static_cast<std::size_t>(i)] + "," +
                   s.labels[static_cast<std::size_t>(j)] + ") is " +
                   std::to_string(got.at(i, j)) + ", expected " +
                   std::to_string(want.at(i, j)));
              return;
            }
          }
        }
        ok("all " + std::to_string(got.n * got.n) + " entries match");
        return;
      }
      case AssertKind::Stable: {
        const auto f1 = lattice::FormClass::from_triple(s.r1, s.s1, s.p1);
        const auto f2 = lattice::FormClass::from_triple(s.r2, s.s2, s.p2);
        const bool got = lattice::stable_equivalent(f1, f2);
        if (got == s.expected) {
          ok(std::string("stable equivalence is ") +
             (got ? "true" : "false"));
        } else {
          fail(std::string("stable equivalence is ") +
               (got ? "true" : "false") + ", expected " +
               (s.expected ? "true" : "false"));
        }
        return;
      }
    }
  }

  // Unreachable placeholders so the visit compiles for every alternative.
  void dispatch(const StComment&) {}
  void dispatch(const StBlank&) {}

  void finalize() {
    if (!touched_) return;
    const Presentation& state = states_[current_];
    report_.b2 = handles::invariants(state).b2;
    report_.chi = handles::euler_characteristic(state);
    if (auto led = handles::effective_ledger(state)) {
      report_.sigma = led->sig;
      report_.parity = led->parity;
      if (led->realized.has_value()) report_.model = *led->realized;
    }
  }

  const Script& script_;
  Report report_;
  std::map<std::string, Presentation> states_;
  std::map<std::string, cork::CorkModel> corks_;
  std::optional<TwistRecord> last_twist_;
  std::string current_ = "main";
  bool touched_ = false;
  int index_ = 0;
  int line_ = 0;
  std::string text_;
};

}  // namespace

ReplayResult replay_full(const Script& s) { return Replayer(s).run(); }

Report replay(const Script& s) { return Replayer(s).run().report; }

// ---- rendering --------------------------------------------------------

std::string Report::text(bool verbose, bool header) const {
  std::ostringstream out;
  if (header) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%d %H:%M:%S UTC",
                  std::gmtime(&now));
    out << "# " << script_name << " replayed " << buf << "\n";
  }
  for (const auto& e : entries) {
    if (!verbose && e.outcome != "fail") continue;
    out << "line " << e.line << ": " << e.text << " -- " << e.outcome;
    if (!e.detail.empty()) out << " (" << e.detail << ")";
    out << "\n";
  }
  out << "summary: statements=" << statements << " checks=" << checks
      << " failures=" << failures << " assumptions=" << assumptions.size()
      << "\n";
  for (const auto& a : assumptions) out << "assumption: " << a << "\n";
  if (model.has_value())
    out << "model: " << model->first << "<+1> + " << model->second
        << "<-1>\n";
  if (b2.has_value()) {
    out << "ledger: b2=" << *b2;
    if (sigma.has_value() && parity.has_value()) {
      out << " sigma=" << *sigma << " parity=" << parity_word(*parity);
    } else {
      out << " sigma=? parity=?";
    }
    out << "\n";
  } else {
    out << "ledger: none\n";
  }
  return out.str();
}

std::string Report::json() const {
  nlohmann::json j;
  j["script"] = script_name;
  j["statements"] = statements;
  j["checks"] = checks;
  j["failures"] = failures;
  j["ok"] = ok();
  j["assumptions"] = assumptions;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : entries) {
    es.push_back({{"index", e.index},
                  {"line", e.line},
                  {"text", e.text},
                  {"outcome", e.outcome},
                  {"detail", e.detail}});
  }
  j["entries"] = es;
  if (b2.has_value()) {
    nlohmann::json led;
    led["b2"] = *b2;
    led["chi"] = chi.has_value() ? nlohmann::json(*chi) : nlohmann::json();
    led["sigma"] =
        sigma.has_value() ? nlohmann::json(*sigma) : nlohmann::json();
    led["parity"] = parity.has_value() ? nlohmann::json(parity_word(*parity))
                                       : nlohmann::json();
    j["ledger"] = led;
  } else {
    j["ledger"] = nullptr;
  }
  if (model.has_value()) {
    j["model"] = {model->first, model->second};
  } else {
    j["model"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace kirby::script
