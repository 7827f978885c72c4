#include "minbcast/proto_a.hpp"

#include <algorithm>

namespace minbcast {

NodeAState NodeAState::initial(Key key, std::size_t degree) {
  NodeAState s;
  s.own_key = std::move(key);
  s.candidate = s.own_key;
  s.views.resize(degree);
  s.candidate_complete = true;
  return s;
}

Bits correction_string(const NodeAState& s) {
  const std::size_t ll = lcp_len(s.candidate, s.participant);
  if (ll == s.participant.size()) return {};  // regular period
  return bin_encode(ll);
}

AMessage emit(const NodeAState& s) {
  AMessage m;
  const Bits lc = correction_string(s);
  if (lc.empty()) {
    if (s.participant.size() < s.candidate.size()) {
      m.present = true;
      m.info = s.candidate[s.participant.size()];
    }
    return m;  // P == C: sleep
  }
  m.present = true;
  m.correction = true;
  if (!s.corr_sent.empty() && s.corr_sent.size() < lc.size() &&
      is_prefix_of(s.corr_sent, lc)) {
    m.info = lc[s.corr_sent.size()];
    m.corr_end = s.corr_sent.size() + 1 == lc.size();
  } else {
    // Fresh correction, or the pending one became stale and is aborted.
    m.info = lc[0];
    m.corr_start = true;
    m.corr_end = lc.size() == 1;
  }
  return m;
}

void advance_self(NodeAState& s, const AMessage& sent) {
  if (!sent.present) return;
  if (!sent.correction) {
    s.participant.push_back(sent.info);
    return;
  }
  if (sent.corr_end) {
    s.corr_sent.clear();
    s.participant.resize(lcp_len(s.candidate, s.participant));
  } else if (sent.corr_start) {
    s.corr_sent.assign(1, sent.info);
  } else {
    s.corr_sent.push_back(sent.info);
  }
}

void absorb_link(NeighborView& view, const AMessage& msg) {
  if (!msg.present) return;
  if (!msg.correction) {
    view.participant.push_back(msg.info);
    return;
  }
  if (msg.corr_start) {
    view.corr_buffer.assign(1, msg.info);
  } else {
    if (view.corr_buffer.empty())
      throw protocol_violation("absorb_link: correction continuation without start");
    view.corr_buffer.push_back(msg.info);
  }
  if (msg.corr_end) {
    std::uint64_t keep;
    try {
      keep = bin_decode(view.corr_buffer);
    } catch (const structural_error& e) {
      throw protocol_violation(std::string("absorb_link: bad correction length: ") + e.what());
    }
    if (keep > view.participant.size())
      throw protocol_violation("absorb_link: correction keeps more bits than committed");
    view.participant.resize(keep);
    view.corr_buffer.clear();
  }
}

AEvents update_candidate(NodeAState& s) {
  const Bits* best = &s.candidate;
  for (const NeighborView& v : s.views) best = pl_min_longest(best, &v.participant);
  AEvents ev;
  if (best != &s.candidate) {
    switch (pl_compare(*best, s.candidate)) {
      case PlCmp::Less:
        ev.pl_decreased = true;
        s.candidate = *best;
        break;
      case PlCmp::RightIsPrefix:  // old candidate extends into the new one
        s.candidate.append(*best, s.candidate.size(), Bits::npos);
        break;
      default:
        throw protocol_violation("update_candidate: fold produced a non-minimal winner");
    }
    s.candidate_complete = is_complete_key(s.candidate);
    ev.key_completed = s.candidate_complete && s.candidate != s.own_key;
  }
  s.last_events = ev;
  return ev;
}

bool is_asleep(const NodeAState& s) {
  return s.corr_sent.empty() && s.participant == s.candidate;
}

// ---------------------------------------------------------------------------
// Baseline

BaselineNode BaselineNode::initial(Key key, std::size_t degree) {
  BaselineNode s;
  s.own_key = std::move(key);
  s.candidate = s.own_key;
  s.views.resize(degree);
  s.cmp.resize(degree);
  return s;
}

BaselineMessage baseline_emit(const BaselineNode& s) {
  BaselineMessage m;
  if (s.sent >= s.candidate.size()) return m;
  m.present = true;
  m.info = s.candidate[s.sent];
  m.restart = s.restart_pending;
  return m;
}

void baseline_advance(BaselineNode& s, const BaselineMessage& sent) {
  if (!sent.present) return;
  ++s.sent;
  s.restart_pending = false;
}

namespace {

// Recomputes cmp[i] against the candidate, resuming from `from` (a known
// agreement point of the two strings).
void refresh_cmp(BaselineNode& s, std::size_t i, std::size_t from) {
  const Bits& v = s.views[i];
  const Bits& c = s.candidate;
  const std::size_t n = std::min(v.size(), c.size());
  auto [iv, ic] = std::mismatch(v.data() + from, v.data() + n, c.data() + from);
  (void)ic;
  const std::size_t ll = static_cast<std::size_t>(iv - v.data());
  s.cmp[i].lcp = ll;
  if (ll == n)
    s.cmp[i].rel = 0;
  else
    s.cmp[i].rel = v[ll] == '0' ? -1 : +1;
}

}  // namespace

void baseline_absorb(BaselineNode& s, std::size_t link, const BaselineMessage& msg) {
  if (!msg.present) return;
  Bits& v = s.views[link];
  if (msg.restart) {
    v.assign(1, msg.info);
    refresh_cmp(s, link, 0);
    return;
  }
  v.push_back(msg.info);
  BaselineNode::ViewCmp& c = s.cmp[link];
  if (c.rel != 0) return;  // relation already decided
  const std::size_t pos = v.size() - 1;
  if (pos < s.candidate.size()) {
    if (v[pos] == s.candidate[pos])
      c.lcp = pos + 1;
    else
      c.rel = v[pos] == '0' ? -1 : +1;
  } else {
    c.lcp = s.candidate.size();  // view extends beyond the candidate
  }
}

bool baseline_update_candidate(BaselineNode& s) {
  bool any_less = false;
  for (const auto& c : s.cmp)
    if (c.rel < 0) {
      any_less = true;
      break;
    }

  if (!any_less) {
    // Only prefix growth is possible: aligned views longer than the candidate.
    const std::size_t base = s.candidate.size();
    int winner = -1;
    for (std::size_t i = 0; i < s.views.size(); ++i) {
      if (s.cmp[i].rel != 0 || s.views[i].size() <= base) continue;
      if (winner < 0) {
        winner = static_cast<int>(i);
        continue;
      }
      // Both extend the candidate; compare their tails only.
      const Bits& a = s.views[winner];
      const Bits& b = s.views[i];
      const std::size_t n = std::min(a.size(), b.size());
      auto [ia, ib] = std::mismatch(a.data() + base, a.data() + n, b.data() + base);
      (void)ib;
      const std::size_t ll = static_cast<std::size_t>(ia - a.data());
      if (ll == n)
        winner = a.size() >= b.size() ? winner : static_cast<int>(i);
      else
        winner = a[ll] == '0' ? winner : static_cast<int>(i);
    }
    if (winner < 0) return false;
    s.candidate.append(s.views[winner], base, Bits::npos);
    for (std::size_t i = 0; i < s.views.size(); ++i)
      if (s.cmp[i].rel == 0 && s.views[i].size() > base) refresh_cmp(s, i, base);
    return false;
  }

  // Some view is strictly PL-smaller: full fold, then rebuild the caches.
  const Bits* best = &s.candidate;
  for (const Bits& v : s.views) best = pl_min_longest(best, &v);
  const PlCmp rel = pl_compare(*best, s.candidate);
  const bool decreased = rel == PlCmp::Less;
  if (best != &s.candidate) s.candidate = *best;
  for (std::size_t i = 0; i < s.views.size(); ++i) refresh_cmp(s, i, 0);
  if (decreased) {
    s.sent = 0;
    s.restart_pending = true;
  }
  return decreased;
}

bool baseline_asleep(const BaselineNode& s) { return s.sent >= s.candidate.size(); }

}  // namespace minbcast
