#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minbcast/proto_bc.hpp"

using namespace minbcast;

TEST_CASE("b_emit: adoption announces the new parent") {
  NodeBCState s = NodeBCState::initial(3);

  // No adoption this stage: silence.
  CHECK(b_emit(s, Adoption{}, 3) == std::vector<BTag>(3, BTag::None));

  // First adoption: child to the source link only.
  Adoption first{true, 1, kRootMarker};
  auto tags = b_emit(s, first, 3);
  CHECK(tags[1] == BTag::Child);
  CHECK(tags[0] == BTag::None);
  CHECK(tags[2] == BTag::None);

  // Parent switch: child on the new link, not_child on the old one.
  Adoption swap{true, 2, 1};
  tags = b_emit(s, swap, 3);
  CHECK(tags[2] == BTag::Child);
  CHECK(tags[1] == BTag::NotChild);

  // Re-adoption through the same link: just the child message again.
  Adoption again{true, 2, 2};
  tags = b_emit(s, again, 3);
  CHECK(tags[2] == BTag::Child);
  CHECK(tags[1] == BTag::None);
}

TEST_CASE("b_absorb maintains children and resets confirmations") {
  NodeBCState s = NodeBCState::initial(2);
  b_absorb(s, 0, BTag::Child, nullptr);
  CHECK(s.children[0] == 1);

  s.confirmed[0] = 1;
  s.sent_confirm = true;
  b_absorb(s, 0, BTag::NotChild, nullptr);
  CHECK(s.children[0] == 0);
  CHECK(s.confirmed[0] == 0);  // reset wiped confirmations
  CHECK(!s.sent_confirm);

  // Stale not_child from a non-child is tolerated and counted.
  long stale = 0;
  b_absorb(s, 1, BTag::NotChild, &stale);
  CHECK(stale == 1);
}

TEST_CASE("local_term needs total local quiet") {
  NodeAState a = NodeAState::initial("11010", 2);
  NodeBCState s = NodeBCState::initial(2);
  a.participant = a.candidate;
  a.views[0].participant = a.candidate;
  a.views[1].participant = a.candidate;
  CHECK(local_term(a, s));

  SUBCASE("a short neighbor view blocks it") {
    a.views[1].participant = "1101";
    CHECK(!local_term(a, s));
  }
  SUBCASE("an open incoming correction blocks it") {
    a.views[0].corr_buffer = "1";
    CHECK(!local_term(a, s));
  }
  SUBCASE("an incomplete candidate blocks it") {
    a.candidate = a.participant = "110";
    a.candidate_complete = false;
    a.views[0].participant = a.views[1].participant = "110";
    CHECK(!local_term(a, s));
  }
  SUBCASE("a busy B slot blocks it") {
    s.last_b_empty = false;
    CHECK(!local_term(a, s));
  }
  SUBCASE("own unfinished stream blocks it") {
    a.participant = "1101";
    CHECK(!local_term(a, s));
  }
}

TEST_CASE("c_emit: leaf confirms once, root terminates, forwarders cascade") {
  // Leaf (no children) with a parent on link 0.
  NodeBCState leaf = NodeBCState::initial(1);
  auto tags = c_emit(leaf, true, 0);
  CHECK(tags[0] == CTag::Confirm);
  CHECK(leaf.sent_confirm);
  tags = c_emit(leaf, true, 0);  // already confirmed: silence
  CHECK(tags[0] == CTag::None);

  // Root with two children, one confirmation missing: silence.
  NodeBCState root = NodeBCState::initial(2);
  root.children = {1, 1};
  root.confirmed = {1, 0};
  tags = c_emit(root, true, kRootMarker);
  CHECK(tags == std::vector<CTag>(2, CTag::None));
  CHECK(!root.final_state);

  // All confirmed: terminate downward and go final.
  root.confirmed = {1, 1};
  tags = c_emit(root, true, kRootMarker);
  CHECK(tags == std::vector<CTag>(2, CTag::Terminate));
  CHECK(root.final_state);

  // Forwarding a received terminate happens in the next C slot, even
  // without local_term, and finalizes the node.
  NodeBCState mid = NodeBCState::initial(2);
  mid.children = {0, 1};
  c_absorb(mid, 0, CTag::Terminate, nullptr);
  CHECK(mid.pending_terminate);
  tags = c_emit(mid, false, 0);
  CHECK(tags[1] == CTag::Terminate);
  CHECK(tags[0] == CTag::None);
  CHECK(mid.final_state);

  // Final nodes stay silent.
  tags = c_emit(mid, true, 0);
  CHECK(tags == std::vector<CTag>(2, CTag::None));
}

TEST_CASE("c_absorb: confirms respect ignoring and child status") {
  NodeBCState s = NodeBCState::initial(2);
  s.children = {1, 0};

  s.ignoring = true;
  c_absorb(s, 0, CTag::Confirm, nullptr);
  CHECK(s.confirmed[0] == 0);  // dropped while the candidate is incomplete

  s.ignoring = false;
  c_absorb(s, 0, CTag::Confirm, nullptr);
  CHECK(s.confirmed[0] == 1);

  long stale = 0;
  c_absorb(s, 1, CTag::Confirm, &stale);  // not a child: stale
  CHECK(s.confirmed[1] == 0);
  CHECK(stale == 1);
}

TEST_CASE("ignoring follows candidate completeness") {
  NodeAState a = NodeAState::initial("11010", 1);
  NodeBCState s = NodeBCState::initial(1);
  refresh_ignoring(s, a);
  CHECK(!s.ignoring);
  a.candidate = "110";
  a.candidate_complete = false;
  refresh_ignoring(s, a);
  CHECK(s.ignoring);
}
