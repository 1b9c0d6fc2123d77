//------------------------------------------------------------------------------
//
//   Copyright 2026 The manetkey Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

// Deterministic in-memory network. Nodes are plain state plus the pure
// protocol functions of manet::dkg; the bus is a reliable FIFO per
// (sender, receiver) pair. Formation messages travel in the clear: the
// protocol assumes a private channel for them and defines none.

#include "manet/curve.hpp"
#include "manet/dkg.hpp"
#include "manet/error.hpp"
#include "manet/gf.hpp"
#include "manet/poly.hpp"
#include "manet/random.hpp"
#include "manet/tea.hpp"
#include "manet/wire.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace manet::simnet {

using json = nlohmann::json;

// -- scenario ---------------------------------------------------------------

enum class ActionKind
{
  form_network,
  admit,
  session,
  send,
  reconstruct,
};

struct Action
{
  ActionKind               kind = ActionKind::form_network;
  std::string              a;       // admit: newcomer; session/send: first party
  std::string              b;       // session/send: second party
  std::vector<std::string> labels;  // admit: helpers; reconstruct: share holders
  dkg::SessionMode         mode = dkg::SessionMode::share_static;
  std::string              text;
};

struct Scenario
{
  CurveParams              params;
  std::size_t              t = 1;
  std::vector<std::string> founders;
  std::uint64_t            seed = 0;
  std::vector<Action>      script;
  // founder polynomials pinned in place of fresh draws
  std::optional<std::vector<SymmetricBivariatePoly>> contributions;
};

/// Checks the static shape: 1 <= t <= |founders|, unique labels, and that the
/// script names only founders or nodes admitted earlier in the script.
inline void validate(Scenario const &s)
{
  if (s.founders.empty())
  {
    throw Error(Errc::invalid_scenario, "no founders");
  }
  if (s.t == 0 || s.t > s.founders.size())
  {
    throw Error(Errc::invalid_scenario, "threshold " + std::to_string(s.t) + " outside [1, " +
                                            std::to_string(s.founders.size()) + "]");
  }
  std::set<std::string> known;
  for (auto const &f : s.founders)
  {
    if (f.empty() || !known.insert(f).second)
    {
      throw Error(Errc::invalid_scenario, "founder label '" + f + "' is empty or repeated");
    }
  }
  auto require = [&](std::string const &label) {
    if (known.count(label) == 0)
    {
      throw Error(Errc::invalid_scenario, "script names undeclared node '" + label + "'");
    }
  };
  for (std::size_t i = 0; i < s.script.size(); ++i)
  {
    auto const &act = s.script[i];
    switch (act.kind)
    {
    case ActionKind::form_network:
      if (i != 0)
      {
        throw Error(Errc::invalid_scenario, "form-network must be the first action");
      }
      break;
    case ActionKind::admit:
      for (auto const &h : act.labels)
      {
        require(h);
      }
      if (act.a.empty() || !known.insert(act.a).second)
      {
        throw Error(Errc::invalid_scenario, "admitted label '" + act.a + "' is empty or taken");
      }
      break;
    case ActionKind::session:
    case ActionKind::send:
      require(act.a);
      require(act.b);
      if (act.a == act.b)
      {
        throw Error(Errc::invalid_scenario, "a node cannot open a session with itself");
      }
      break;
    case ActionKind::reconstruct:
      for (auto const &l : act.labels)
      {
        require(l);
      }
      break;
    }
  }
  if (s.contributions && s.contributions->size() != s.founders.size())
  {
    throw Error(Errc::invalid_contribution, std::to_string(s.contributions->size()) +
                                                " pinned polynomials for " +
                                                std::to_string(s.founders.size()) + " founders");
  }
}

/// Pins the founders' polynomials, one per founder in order.
inline Scenario inject_contributions(Scenario s, std::vector<SymmetricBivariatePoly> fixed)
{
  if (fixed.size() != s.founders.size())
  {
    throw Error(Errc::invalid_contribution, std::to_string(fixed.size()) + " polynomials for " +
                                                std::to_string(s.founders.size()) + " founders");
  }
  for (std::size_t i = 0; i < fixed.size(); ++i)
  {
    if (fixed[i].field().modulus() != s.params.order)
    {
      throw Error(Errc::invalid_contribution, "polynomial " + std::to_string(i) + " is not over Z_q");
    }
    if (fixed[i].degree() >= static_cast<int>(s.t))
    {
      throw Error(Errc::invalid_contribution, "polynomial " + std::to_string(i) + " has degree " +
                                                  std::to_string(fixed[i].degree()) + " > t-1");
    }
  }
  s.contributions = std::move(fixed);
  return s;
}

inline json to_json(Action const &act)
{
  switch (act.kind)
  {
  case ActionKind::form_network: return {{"action", "form-network"}};
  case ActionKind::admit: return {{"action", "admit"}, {"label", act.a}, {"via", act.labels}};
  case ActionKind::session:
    return {{"action", "session"}, {"a", act.a}, {"b", act.b}, {"mode", dkg::to_string(act.mode)}};
  case ActionKind::send: return {{"action", "send"}, {"from", act.a}, {"to", act.b}, {"text", act.text}};
  case ActionKind::reconstruct: return {{"action", "reconstruct"}, {"labels", act.labels}};
  }
  return {};
}

inline Action action_from_json(json const &j)
{
  auto const name = j.at("action").get<std::string>();
  Action     act;
  if (name == "form-network")
  {
    act.kind = ActionKind::form_network;
  }
  else if (name == "admit")
  {
    act.kind   = ActionKind::admit;
    act.a      = j.at("label").get<std::string>();
    act.labels = j.at("via").get<std::vector<std::string>>();
  }
  else if (name == "session")
  {
    act.kind  = ActionKind::session;
    act.a     = j.at("a").get<std::string>();
    act.b     = j.at("b").get<std::string>();
    auto mode = dkg::parse_session_mode(j.value("mode", "share-static"));
    if (!mode)
    {
      throw Error(Errc::parse, "unknown session mode " + j.value("mode", ""));
    }
    act.mode = *mode;
  }
  else if (name == "send")
  {
    act.kind = ActionKind::send;
    act.a    = j.at("from").get<std::string>();
    act.b    = j.at("to").get<std::string>();
    act.text = j.at("text").get<std::string>();
  }
  else if (name == "reconstruct")
  {
    act.kind   = ActionKind::reconstruct;
    act.labels = j.at("labels").get<std::vector<std::string>>();
  }
  else
  {
    throw Error(Errc::parse, "unknown action '" + name + "'");
  }
  return act;
}

inline json to_json(Scenario const &s)
{
  json script = json::array();
  for (auto const &act : s.script)
  {
    script.push_back(to_json(act));
  }
  json out{{"curve", wire::to_json(s.params)},
           {"t", s.t},
           {"founders", s.founders},
           {"seed", s.seed},
           {"script", std::move(script)}};
  if (s.contributions)
  {
    json polys = json::array();
    for (auto const &p : *s.contributions)
    {
      polys.push_back(wire::to_json(p));
    }
    out["contributions"] = std::move(polys);
  }
  return out;
}

/// Parses and validates. Malformed JSON or a bad shape raise `parse` or
/// `invalid_scenario`.
inline Scenario scenario_from_json(json const &j)
{
  try
  {
    Scenario s{wire::params_from_json(j.at("curve")), 1, {}, 0, {}, std::nullopt};
    s.t        = j.at("t").get<std::size_t>();
    s.founders = j.at("founders").get<std::vector<std::string>>();
    s.seed     = j.contains("seed") ? wire::u64_from(j["seed"]) : 0;
    for (auto const &act : j.value("script", json::array()))
    {
      s.script.push_back(action_from_json(act));
    }
    if (j.contains("contributions"))
    {
      PrimeField const                    field(s.params.order);
      std::vector<SymmetricBivariatePoly> polys;
      for (auto const &p : j["contributions"])
      {
        polys.push_back(wire::bivariate_from_json(p, field));
      }
      s = inject_contributions(std::move(s), std::move(polys));
    }
    validate(s);
    return s;
  }
  catch (json::exception const &e)
  {
    throw Error(Errc::parse, e.what());
  }
}

// -- bus --------------------------------------------------------------------

struct Envelope
{
  std::string from;
  std::string to;
  json        message;  // {type, from, to, payload}
};

/// Reliable FIFO per (sender, receiver) pair. `deliver_all` drains the
/// pairs round-robin, one message per pair per pass, pairs visited in the
/// order they first carried traffic.
class MessageBus
{
public:
  void enqueue(Envelope envelope)
  {
    auto key = std::make_pair(envelope.from, envelope.to);
    auto it  = index_.find(key);
    if (it == index_.end())
    {
      it = index_.emplace(key, queues_.size()).first;
      queues_.emplace_back();
    }
    queues_[it->second].push_back(std::move(envelope));
    ++enqueued_;
  }

  std::size_t pending() const noexcept
  {
    return enqueued_ - delivered_;
  }

  std::size_t enqueued() const noexcept
  {
    return enqueued_;
  }

  std::size_t delivered() const noexcept
  {
    return delivered_;
  }

  std::vector<Envelope> deliver_all()
  {
    std::vector<Envelope> out;
    bool                  progress = true;
    while (progress)
    {
      progress = false;
      for (auto &q : queues_)
      {
        if (!q.empty())
        {
          out.push_back(std::move(q.front()));
          q.pop_front();
          progress = true;
        }
      }
    }
    delivered_ += out.size();
    return out;
  }

private:
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
  std::vector<std::deque<Envelope>>                          queues_;
  std::size_t                                                enqueued_  = 0;
  std::size_t                                                delivered_ = 0;
};

// -- transcript -------------------------------------------------------------

struct Transcript
{
  std::vector<json> events;  // each {step, kind, ...}
  bool              failed = false;

  /// JSON lines, one event per line, keys sorted.
  std::string to_jsonl() const
  {
    std::string out;
    for (auto const &e : events)
    {
      out += e.dump();
      out += '\n';
    }
    return out;
  }

  std::vector<json> of_kind(std::string_view kind) const
  {
    std::vector<json> out;
    for (auto const &e : events)
    {
      if (e.at("kind") == kind)
      {
        out.push_back(e);
      }
    }
    return out;
  }
};

struct RunOptions
{
  unsigned threads = 1;  // >1 computes per-node work concurrently
};

/// Per-node stream seeded from (scenario seed, label), so adding a node does
/// not shift anyone else's draws.
inline Rng node_rng(std::uint64_t seed, std::string const &label)
{
  auto const                 digest = dkg::sha224(label);
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32u)};
  for (std::size_t i = 0; i + 4 <= digest.size(); i += 4)
  {
    words.push_back((std::uint32_t{digest[i]} << 24u) | (std::uint32_t{digest[i + 1]} << 16u) |
                    (std::uint32_t{digest[i + 2]} << 8u) | std::uint32_t{digest[i + 3]});
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

namespace detail {

struct Node
{
  dkg::NodeId                             id;
  Rng                                     rng;
  std::vector<dkg::ShareMessage>          inbox;
  std::optional<dkg::NodeKeyMaterial>     material;
  std::map<std::string, dkg::SessionOffer> offers;
  std::map<std::string, std::uint64_t>     sessions;
};

/// Maps `fn` over indices [0, n), optionally on several threads; results and
/// the first exception come back in index order either way.
template <typename Fn>
auto map_nodes(std::size_t n, unsigned threads, Fn fn)
{
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> results(n);
  if (threads <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      results[i].emplace(fn(i));
    }
  }
  else
  {
    std::vector<std::future<R>> futures;
    futures.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      futures.push_back(std::async(std::launch::async, fn, i));
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      results[i].emplace(futures[i].get());
    }
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto &r : results)
  {
    out.push_back(std::move(*r));
  }
  return out;
}

class Runner
{
public:
  Runner(Scenario const &s, RunOptions options)
    : s_(s)
    , options_(options)
    , field_(s.params.order)
  {}

  Transcript run()
  {
    emit("scenario", {{"scenario", to_json(s_)}});
    try
    {
      std::size_t first = 0;
      if (!s_.script.empty() && s_.script.front().kind == ActionKind::form_network)
      {
        first = 1;
      }
      form_network();
      for (std::size_t i = first; i < s_.script.size(); ++i)
      {
        execute(s_.script[i]);
      }
      emit("done", {{"messages", bus_.delivered()}});
    }
    catch (Error const &e)
    {
      transcript_.failed = true;
      emit("failure", {{"code", to_string(e.code())}, {"message", e.what()}});
    }
    return std::move(transcript_);
  }

private:
  void emit(std::string_view kind, json body)
  {
    body["step"] = transcript_.events.size();
    body["kind"] = kind;
    transcript_.events.push_back(std::move(body));
  }

  Node &node(std::string const &label)
  {
    auto it = nodes_.find(label);
    if (it == nodes_.end())
    {
      throw Error(Errc::unknown_node, "no node '" + label + "' in the network");
    }
    return it->second;
  }

  dkg::NodeKeyMaterial const &material(std::string const &label)
  {
    auto &n = node(label);
    if (!n.material)
    {
      throw Error(Errc::unknown_node, label + " holds no key material");
    }
    return *n.material;
  }

  void add_node(std::string const &label)
  {
    auto id = dkg::NodeId::make(label, field_);
    for (auto const &[_, other] : nodes_)
    {
      if (other.id.hash_point == id.hash_point)
      {
        throw Error(Errc::collision, label + " and " + other.id.label + " both hash to " +
                                         std::to_string(id.hash_point.value()));
      }
    }
    nodes_.emplace(label, Node{std::move(id), node_rng(s_.seed, label), {}, {}, {}, {}});
  }

  void deliver(std::function<void(Envelope const &)> const &receive)
  {
    for (auto const &env : bus_.deliver_all())
    {
      emit("deliver", {{"message", env.message}});
      receive(env);
    }
  }

  void form_network()
  {
    std::vector<dkg::NodeId> roster;
    for (auto const &label : s_.founders)
    {
      add_node(label);
      roster.push_back(node(label).id);
    }
    std::vector<Node *> founders;
    for (auto const &label : s_.founders)
    {
      founders.push_back(&node(label));
    }

    auto contributions = map_nodes(founders.size(), options_.threads, [&](std::size_t i) {
      if (s_.contributions)
      {
        return dkg::contribution_from(founders[i]->id, (*s_.contributions)[i], s_.t, s_.params);
      }
      return dkg::make_contribution(founders[i]->id, s_.t, s_.params, founders[i]->rng);
    });

    for (auto const &c : contributions)
    {
      emit("contribution", {{"node", c.owner.label},
                            {"hash", wire::to_json(c.owner.hash_point)},
                            {"commitment", wire::to_json(c.commitment)}});
      for (auto &msg : dkg::share_messages(c, roster))
      {
        if (msg.to == msg.from)
        {
          emit("retain", {{"message", wire::to_json(msg)}});
          node(msg.to.label).inbox.push_back(std::move(msg));
        }
        else
        {
          bus_.enqueue({msg.from.label, msg.to.label, wire::to_json(msg)});
        }
      }
    }

    deliver([&](Envelope const &env) {
      node(env.to).inbox.push_back(wire::share_from_json(env.message, field_, s_.params.curve));
    });

    auto materials = map_nodes(founders.size(), options_.threads, [&](std::size_t i) {
      return dkg::aggregate(founders[i]->id, founders[i]->inbox, founders.size(), s_.params);
    });

    for (std::size_t i = 0; i < founders.size(); ++i)
    {
      auto const &m = materials[i];
      emit("key-material", {{"node", m.id.label},
                            {"row", wire::to_json(m.row)},
                            {"share", wire::to_json(m.share)},
                            {"public_key", wire::to_json(m.public_key)}});
      if (m.public_key != materials.front().public_key)
      {
        throw Error(Errc::invalid_commitment, m.id.label + " computed a different public key");
      }
      founders[i]->material = m;
    }
    emit("public-key", {{"public_key", wire::to_json(materials.front().public_key)}});
  }

  void execute(Action const &act)
  {
    switch (act.kind)
    {
    case ActionKind::form_network:
      throw Error(Errc::invalid_scenario, "network already formed");
    case ActionKind::admit: admit(act); break;
    case ActionKind::session: session(act); break;
    case ActionKind::send: send(act); break;
    case ActionKind::reconstruct: reconstruct(act); break;
    }
  }

  void admit(Action const &act)
  {
    add_node(act.a);
    auto &newcomer = node(act.a);
    for (auto const &label : act.labels)
    {
      auto const v = dkg::admission_value(material(label), newcomer.id);
      bus_.enqueue({label, act.a,
                    wire::envelope("admission", label, act.a,
                                   {{"value", wire::to_json(v.value)},
                                    {"public_key", wire::to_json(v.public_key)}})});
    }
    std::vector<dkg::AdmissionValue> values;
    deliver([&](Envelope const &env) {
      auto const &payload = env.message.at("payload");
      values.push_back({node(env.from).id, field_(wire::u64_from(payload.at("value"))),
                        wire::point_from_json(payload.at("public_key"), s_.params.curve)});
    });
    newcomer.material = dkg::complete_admission(newcomer.id, values, s_.t);
    emit("admitted", {{"node", act.a},
                      {"hash", wire::to_json(newcomer.id.hash_point)},
                      {"row", wire::to_json(newcomer.material->row)},
                      {"share", wire::to_json(newcomer.material->share)}});
  }

  void session(Action const &act)
  {
    auto &na      = node(act.a);
    auto &nb      = node(act.b);
    auto  offer_a = dkg::session_offer(material(act.a), act.mode, s_.params, na.rng);
    auto  offer_b = dkg::session_offer(material(act.b), act.mode, s_.params, nb.rng);
    for (auto const &[from, to, offer] :
         {std::tuple{act.a, act.b, offer_a}, std::tuple{act.b, act.a, offer_b}})
    {
      bus_.enqueue({from, to,
                    wire::envelope("dh-public", from, to,
                                   {{"point", wire::to_json(offer.public_value)},
                                    {"mode", dkg::to_string(act.mode)}})});
    }
    std::map<std::string, SessionKey> keys;
    deliver([&](Envelope const &env) {
      auto const peer  = wire::point_from_json(env.message.at("payload").at("point"), s_.params.curve);
      auto const &mine = env.to == act.a ? offer_a : offer_b;
      keys.emplace(env.to, dkg::complete_session(mine, peer));
    });
    auto const &ka = keys.at(act.a);
    auto const &kb = keys.at(act.b);
    if (ka.sk != kb.sk || ka.shared_point != kb.shared_point)
    {
      throw Error(Errc::session_refused, act.a + " and " + act.b + " derived different keys");
    }
    na.sessions[act.b] = ka.sk;
    nb.sessions[act.a] = kb.sk;
    emit("session", {{"a", act.a},
                     {"b", act.b},
                     {"mode", dkg::to_string(act.mode)},
                     {"public_a", wire::to_json(offer_a.public_value)},
                     {"public_b", wire::to_json(offer_b.public_value)},
                     {"shared_point", wire::to_json(ka.shared_point)},
                     {"sk", ka.sk},
                     {"secret_for_test", true}});
  }

  void send(Action const &act)
  {
    auto &sender = node(act.a);
    auto  it     = sender.sessions.find(act.b);
    if (it == sender.sessions.end())
    {
      throw Error(Errc::session_refused, "no session between " + act.a + " and " + act.b);
    }
    auto const key    = tea::derive_key(it->second);
    auto const bytes  = tea::as_bytes(act.text);
    auto const blocks = tea::encrypt_blocks(tea::pack_blocks(bytes, tea::kMessageConvention.order), key,
                                            tea::kMessageConvention.cycles);
    auto const hex    = tea::to_hex(blocks);
    emit("ciphertext", {{"from", act.a}, {"to", act.b}, {"hex", hex}});
    bus_.enqueue({act.a, act.b, wire::envelope("ciphertext", act.a, act.b, {{"hex", hex}})});

    deliver([&](Envelope const &env) {
      auto const &receiver = node(env.to);
      auto const  rk       = tea::derive_key(receiver.sessions.at(env.from));
      auto const  received = tea::blocks_from_hex(env.message.at("payload").at("hex").get<std::string>());
      auto const  plain    = tea::decrypt_buffer(tea::unpack_blocks(received, tea::kMessageConvention.order), rk,
                                                 tea::Framing::text);
      std::string text(plain.begin(), plain.end());
      emit("received", {{"node", env.to}, {"text", text}});
      if (text != act.text)
      {
        throw Error(Errc::session_refused, env.to + " decrypted a different message");
      }
    });
  }

  void reconstruct(Action const &act)
  {
    std::vector<dkg::ShareValue> shares;
    for (auto const &label : act.labels)
    {
      auto const &m = material(label);
      shares.push_back({m.id, m.share});
    }
    auto const secret = dkg::reconstruct_secret(shares, s_.t);
    emit("reconstruct", {{"labels", act.labels}, {"secret", wire::to_json(secret)}});
  }

  Scenario const             &s_;
  RunOptions                  options_;
  PrimeField                  field_;
  std::map<std::string, Node> nodes_;
  MessageBus                  bus_;
  Transcript                  transcript_;
};

}  // namespace detail

/// Forms the network, then plays the script. The first protocol error ends
/// the run with a `failure` event.
inline Transcript run_scenario(Scenario const &s, RunOptions options = {})
{
  validate(s);
  return detail::Runner(s, options).run();
}

}  // namespace manet::simnet
