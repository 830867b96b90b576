// Copyright 2026 The Stranger Authentication Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Key establishment between strangers over a partially compromised network.
//
// Alice draws a random secret s = (s1, s2, s3), splits it into one XOR share
// per selected path and sends the shares to Bob, who recombines them into
// s'. The two sides then confirm s = s' without revealing it:
//
//   Alice -> Bob   m1 = (r || H(s3)) ^ s1
//   Bob            decodes (r' || h) = m1 ^ s1', aborts unless h == H(s3')
//   Bob -> Alice   m2 = H(r') ^ s2'
//   Alice          accepts iff m2 ^ s2 == H(r)
//
// On acceptance both keep s3. A share crossing only honest relays is
// assumed perfectly secret; a compromised relay sees (and may replace) it.
//
// The number of shares n travels in the clear with the first share's routing
// header, so a relay on that path can see it. Lengths of r and H are
// configurable and default to 64 bits.

#ifndef STRANGER_PROTOCOL_HPP
#define STRANGER_PROTOCOL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stranger/bitstring.hpp"
#include "stranger/graph.hpp"
#include "stranger/pathselect.hpp"
#include "stranger/rng.hpp"

namespace stranger::protocol {

// ---------------------------------------------------------------------------
// Digests

/// Hash H used by the confirmation exchange. Output length is fixed per
/// instance.
class Digest {
 public:
  virtual ~Digest() = default;
  virtual std::size_t output_bits() const = 0;
  virtual Bitstring operator()(const Bitstring& input) const = 0;
};

/// 64-bit FNV-1a over (bit length, bytes, block counter), one block per 64
/// output bits, truncated to `output_bits`.
class Fnv1aDigest final : public Digest {
 public:
  explicit Fnv1aDigest(std::size_t output_bits = 64) : bits_(output_bits) {
    if (bits_ == 0) throw std::invalid_argument("Fnv1aDigest: output length must be positive");
  }
  std::size_t output_bits() const override { return bits_; }

  Bitstring operator()(const Bitstring& input) const override {
    Bitstring out;
    for (std::uint64_t block = 0; out.size() < bits_; ++block) {
      std::uint64_t h = kOffset;
      auto mix = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= kPrime;
      };
      std::uint64_t len = input.size();
      for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(len >> (8 * i)));
      for (std::uint8_t byte : input.bytes()) mix(byte);
      for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(block >> (8 * i)));
      std::size_t take = std::min<std::size_t>(64, bits_ - out.size());
      out = out.concat(Bitstring::from_uint(h >> (64 - take), take));
    }
    return out;
  }

  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

 private:
  std::size_t bits_;
};

/// Lazily filled table of independent uniform outputs: each new input gets
/// fresh random bits from a seeded stream, repeated inputs get the same
/// answer. Not thread-safe.
class RandomOracleDigest final : public Digest {
 public:
  RandomOracleDigest(std::size_t output_bits, std::uint64_t seed) : bits_(output_bits), gen_(seed) {}
  std::size_t output_bits() const override { return bits_; }

  Bitstring operator()(const Bitstring& input) const override {
    auto [it, fresh] = table_.try_emplace(input);
    if (fresh) it->second = Bitstring::random(bits_, gen_);
    return it->second;
  }

  std::size_t queries() const noexcept { return table_.size(); }

 private:
  std::size_t bits_;
  mutable Rng gen_;
  mutable std::map<Bitstring, Bitstring> table_;
};

/// First `output_bits` bits of the input, zero-padded. Injective on inputs
/// of exactly that length; only meant for worked examples and tests.
class TruncationDigest final : public Digest {
 public:
  explicit TruncationDigest(std::size_t output_bits) : bits_(output_bits) {}
  std::size_t output_bits() const override { return bits_; }
  Bitstring operator()(const Bitstring& input) const override {
    if (input.size() >= bits_) return input.slice(0, bits_);
    return input.concat(Bitstring::zeros(bits_ - input.size()));
  }

 private:
  std::size_t bits_;
};

// ---------------------------------------------------------------------------
// Secrets and shares

struct Lengths {
  std::size_t key_len = 256;
  std::size_t r_len = 64;
  std::size_t h_len = 64;

  std::size_t s1_len() const { return r_len + h_len; }
  std::size_t s2_len() const { return h_len; }
  std::size_t total() const { return s1_len() + s2_len() + key_len; }
};

/// s = (s1, s2, s3): s1 masks the challenge, s2 masks the response, s3 is
/// the key kept on success.
struct SecretTriple {
  Bitstring s1, s2, s3;

  template <class Generator>
  static SecretTriple random(const Lengths& len, Generator& gen) {
    return {Bitstring::random(len.s1_len(), gen), Bitstring::random(len.s2_len(), gen),
            Bitstring::random(len.key_len, gen)};
  }

  static SecretTriple decode(const Bitstring& s, const Lengths& len) {
    if (s.size() != len.total()) throw std::invalid_argument("SecretTriple::decode: wrong length");
    return {s.slice(0, len.s1_len()), s.slice(len.s1_len(), len.s2_len()),
            s.slice(len.s1_len() + len.s2_len(), len.key_len)};
  }

  Bitstring encode() const { return s1.concat(s2).concat(s3); }
  std::size_t size() const { return s1.size() + s2.size() + s3.size(); }

  friend bool operator==(const SecretTriple&, const SecretTriple&) = default;
};

struct ShareSet {
  std::vector<Bitstring> shares;
  std::size_t size() const noexcept { return shares.size(); }
};

/// n-of-n XOR sharing: n-1 uniform shares, the last one fixes the XOR to s.
template <class Generator>
ShareSet split_secret(const Bitstring& s, std::size_t n, Generator& gen) {
  if (n < 1) throw std::invalid_argument("split_secret: need at least one share");
  ShareSet out;
  out.shares.reserve(n);
  Bitstring last = s;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.shares.push_back(Bitstring::random(s.size(), gen));
    last ^= out.shares.back();
  }
  out.shares.push_back(std::move(last));
  return out;
}

inline Bitstring combine_shares(const ShareSet& set) {
  if (set.shares.empty()) throw std::invalid_argument("combine_shares: no shares");
  Bitstring acc = set.shares.front();
  for (std::size_t i = 1; i < set.shares.size(); ++i) {
    if (set.shares[i].size() != acc.size()) throw std::invalid_argument("combine_shares: share lengths differ");
    acc ^= set.shares[i];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Share transport

/// What a compromised relay does with a share it forwards.
struct TamperPolicy {
  enum class Mode { kPassive, kModify };
  Mode mode = Mode::kPassive;
  /// Replacement for a modified share; random bits when unset.
  std::function<Bitstring(const Bitstring&)> substitute;

  static TamperPolicy passive() { return {}; }
  static TamperPolicy modify(std::function<Bitstring(const Bitstring&)> fn = {}) {
    return {Mode::kModify, std::move(fn)};
  }
};

struct Delivery {
  Bitstring delivered;
  bool learned = false;
};

template <class Generator>
Delivery transmit_share(const Bitstring& share, const Path& path, const CompromiseMask& mask,
                        const TamperPolicy& policy, Generator& gen) {
  Delivery out{share, !path_is_honest(path, mask)};
  if (out.learned && policy.mode == TamperPolicy::Mode::kModify) {
    out.delivered = policy.substitute ? policy.substitute(share) : Bitstring::random(share.size(), gen);
    if (out.delivered.size() != share.size()) throw std::invalid_argument("transmit_share: substitute has wrong length");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Key confirmation

/// m1 = (r || H(s3)) ^ s1.
inline Bitstring make_challenge(const SecretTriple& s, const Bitstring& r, const Digest& H) {
  Bitstring h = H(s.s3);
  if (r.size() + h.size() != s.s1.size()) {
    throw std::invalid_argument("make_challenge: |r| + |H| must equal |s1|");
  }
  return r.concat(h) ^ s.s1;
}

struct Response {
  bool check = false;
  std::optional<Bitstring> m2;  // only sent when the check passes
};

/// Bob's side: unmask with s1', compare the hash against H(s3') and, if it
/// matches, answer with H(r') ^ s2'.
inline Response respond(const Bitstring& m1, const SecretTriple& s_prime, const Digest& H) {
  if (m1.size() != s_prime.s1.size()) throw std::invalid_argument("respond: |m1| differs from |s1'|");
  const std::size_t h_len = H.output_bits();
  if (h_len > m1.size() || s_prime.s2.size() != h_len) throw std::invalid_argument("respond: digest length mismatch");
  Bitstring plain = m1 ^ s_prime.s1;
  Bitstring r_prime = plain.slice(0, plain.size() - h_len);
  Bitstring h_alice = plain.slice(plain.size() - h_len, h_len);
  Response out;
  out.check = h_alice == H(s_prime.s3);
  if (out.check) out.m2 = H(r_prime) ^ s_prime.s2;
  return out;
}

/// Alice's side: m2 ^ s2 == H(r).
inline bool verify(const Bitstring& m2, const SecretTriple& s, const Bitstring& r, const Digest& H) {
  if (m2.size() != s.s2.size()) throw std::invalid_argument("verify: |m2| differs from |s2|");
  return (m2 ^ s.s2) == H(r);
}

enum class Outcome { kAccept, kRejectBob, kRejectAlice };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kAccept: return "accept";
    case Outcome::kRejectBob: return "reject_bob";
    case Outcome::kRejectAlice: return "reject_alice";
  }
  return "?";
}

struct ExchangeTranscript {
  Bitstring r;
  Bitstring m1;
  std::optional<Bitstring> m2;
  Outcome outcome = Outcome::kRejectBob;
  std::optional<Bitstring> derived_key;  // s3, present iff accepted
};

/// Optional man-in-the-middle hooks on the public channel.
struct Channel {
  std::function<Bitstring(const Bitstring&)> to_bob;    // rewrites m1
  std::function<Bitstring(const Bitstring&)> to_alice;  // rewrites m2
};

template <class Generator>
ExchangeTranscript run_exchange(const SecretTriple& s, const SecretTriple& s_prime, Generator& gen,
                                const Digest& H, const Channel& channel = {}) {
  ExchangeTranscript tx;
  if (s.s1.size() < H.output_bits()) throw std::invalid_argument("run_exchange: s1 shorter than digest");
  tx.r = Bitstring::random(s.s1.size() - H.output_bits(), gen);
  tx.m1 = make_challenge(s, tx.r, H);
  Bitstring m1_at_bob = channel.to_bob ? channel.to_bob(tx.m1) : tx.m1;
  Response reply = respond(m1_at_bob, s_prime, H);
  if (!reply.check) {
    tx.outcome = Outcome::kRejectBob;
    return tx;
  }
  tx.m2 = channel.to_alice ? channel.to_alice(*reply.m2) : *reply.m2;
  if (!verify(*tx.m2, s, tx.r, H)) {
    tx.outcome = Outcome::kRejectAlice;
    return tx;
  }
  tx.outcome = Outcome::kAccept;
  tx.derived_key = s.s3;
  return tx;
}

struct ForgedMessages {
  Bitstring m1_to_bob;
  Bitstring m2_to_alice;
};

/// Man-in-the-middle forgery by an adversary that believes Alice holds
/// `s_alice` and Bob holds `s_bob`. It unmasks Alice's challenge to recover
/// r, re-encrypts a valid challenge for Bob under s_bob, and answers Alice
/// with H(r) ^ s_alice.s2. With correct beliefs both sides accept.
inline ForgedMessages forge_acceptance(const Bitstring& m1_from_alice, const SecretTriple& s_alice,
                                       const SecretTriple& s_bob, const Digest& H) {
  const std::size_t h_len = H.output_bits();
  Bitstring r = (m1_from_alice ^ s_alice.s1).slice(0, m1_from_alice.size() - h_len);
  return {make_challenge(s_bob, r, H), H(r) ^ s_alice.s2};
}

/// XOR of two round keys.
inline Bitstring two_round_combine(const Bitstring& k1, const Bitstring& k2) {
  if (k1.size() != k2.size()) throw std::invalid_argument("two_round_combine: key lengths differ");
  return k1 ^ k2;
}

// ---------------------------------------------------------------------------
// Full runs over a graph

struct PathReport {
  Path path;
  bool learned = false;
};

struct RoundResult {
  std::vector<PathReport> paths;
  std::size_t attempts = 0;
  bool adversary_knows_secret = false;  // every share seen, last attempt
  ExchangeTranscript transcript;
};

/// Steps (i)-(vi) for one initiator/responder pair: select paths, share a
/// fresh secret over them, recombine, confirm, and start over with a new
/// secret after a rejection (up to `max_attempts`).
template <class Generator>
RoundResult run_round(const Graph& g, const CompromiseMask& mask, NodeId initiator, NodeId responder,
                      std::size_t path_count, const Lengths& len, const TamperPolicy& policy,
                      const Digest& H, Generator& gen, std::size_t max_attempts = 8) {
  RoundResult out;
  PathSet set = select_paths(g, initiator, responder, path_count);
  if (set.empty()) throw std::runtime_error("run_round: initiator and responder are disconnected");
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    out.attempts = attempt;
    out.paths.clear();
    SecretTriple s = SecretTriple::random(len, gen);
    ShareSet sent = split_secret(s.encode(), set.size(), gen);
    ShareSet received;
    out.adversary_knows_secret = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
      Delivery d = transmit_share(sent.shares[i], set.paths[i], mask, policy, gen);
      out.paths.push_back({set.paths[i], d.learned});
      out.adversary_knows_secret = out.adversary_knows_secret && d.learned;
      received.shares.push_back(std::move(d.delivered));
    }
    SecretTriple s_prime = SecretTriple::decode(combine_shares(received), len);
    out.transcript = run_exchange(s, s_prime, gen, H);
    if (out.transcript.outcome == Outcome::kAccept) break;
  }
  return out;
}

struct TwoRoundResult {
  RoundResult first;   // initiated by Alice
  RoundResult second;  // initiated by Bob
  std::optional<Bitstring> key;
  std::size_t regenerations = 0;  // all-zero combined keys thrown away
};

/// Both parties initiate one round each; the round keys are XORed so that
/// neither side alone controls which paths protect the key. An all-zero
/// combination is discarded and both rounds rerun.
template <class Generator>
TwoRoundResult run_two_rounds(const Graph& g, const CompromiseMask& mask, NodeId alice, NodeId bob,
                              std::size_t path_count, const Lengths& len, const TamperPolicy& policy,
                              const Digest& H, Generator& gen) {
  TwoRoundResult out;
  for (;;) {
    out.first = run_round(g, mask, alice, bob, path_count, len, policy, H, gen);
    out.second = run_round(g, mask, bob, alice, path_count, len, policy, H, gen);
    if (!out.first.transcript.derived_key || !out.second.transcript.derived_key) return out;
    Bitstring k = two_round_combine(*out.first.transcript.derived_key, *out.second.transcript.derived_key);
    if (!k.is_zero()) {
      out.key = std::move(k);
      return out;
    }
    ++out.regenerations;
  }
}

}  // namespace stranger::protocol

#endif  // STRANGER_PROTOCOL_HPP
