import numpy as np
import pytest
from hypothesis import given, strategies as st

from ruleqa.rules import (
    CATEGORY_VOCABULARY,
    HashingNgramEncoder,
    KeywordCategorizer,
    ListRuleExtractor,
    MatchMethod,
    Rule,
    RuleSet,
    best_similarity,
    categorize_rule,
    cited_rule_numbers,
    extract_rules,
    match_reason,
    rules_from_texts,
)

from helpers import rule_set


class TestExtractRules:
    def test_numbered_list(self):
        rs = extract_rules("Rules:\n1. No spam\n2. Be civil")
        assert [(r.number, r.text) for r in rs.rules] == [(1, "No spam"), (2, "Be civil")]

    def test_inline_bullets(self):
        rs = extract_rules("Community stuff\n• No NSFW • Stay on topic")
        assert [(r.number, r.text) for r in rs.rules] == [(1, "No NSFW"), (2, "Stay on topic")]

    def test_dash_bullets(self):
        rs = extract_rules("- Keep it legal\n- No personal attacks")
        assert rs.texts() == ["Keep it legal", "No personal attacks"]

    def test_prose_only_is_empty(self):
        rs = extract_rules("We talk about cooking and share recipes with each other.")
        assert len(rs) == 0

    def test_renumbering_is_contiguous_and_verbatim(self):
        description = "intro text\n3) Use the search bar first \n7. Mark spoilers properly\n"
        rs = extract_rules(description)
        assert rs.numbers == (1, 2)
        assert rs.texts() == ["Use the search bar first", "Mark spoilers properly"]

    def test_single_word_items_skipped(self):
        rs = extract_rules("1. Spam\n2. Be civil")
        assert rs.texts() == ["Be civil"]

    def test_empty_description_rejected(self):
        with pytest.raises(ValueError):
            extract_rules("   ")

    def test_rule_prefix_marker(self):
        rs = extract_rules("Rule 1: No doxxing anyone\nRule 2: Stay on topic")
        assert rs.texts() == ["No doxxing anyone", "Stay on topic"]


class TestCitationScan:
    @pytest.mark.parametrize(
        "reason,expected",
        [
            ("Rule 6", 6),
            ("rule 6 violation", 6),
            ("removed per rule #3", 3),
            ("RULE#2", 2),
            ("rule # 4 broken", 4),
            ("#2", 2),
            ("see #5 please", 5),
        ],
    )
    def test_citations(self, reason, expected):
        assert cited_rule_numbers(reason, max_rule_number=7)[0] == expected

    def test_bare_hash_out_of_range_ignored(self):
        assert cited_rule_numbers("#12", max_rule_number=7) == []

    def test_community_link_not_a_citation(self):
        assert cited_rule_numbers("see r/4chan", max_rule_number=7) == []

    def test_no_citation(self):
        assert cited_rule_numbers("spamming links", max_rule_number=7) == []


class TestMatchReason:
    def test_number_reference(self):
        rs = rule_set([f"Rule text {i}" for i in "abcdefg"])
        result = match_reason("Rule 6", rs)
        assert result.rule_number == 6
        assert result.method is MatchMethod.NUMBER_REFERENCE

    def test_out_of_range_citation_falls_through(self):
        rs = rule_set(["No spam or self-promotion", "Be civil"])
        result = match_reason("rule 9: spamming links everywhere", rs)
        assert result.method is not MatchMethod.NUMBER_REFERENCE

    def test_exact_rule_text_matches_via_similarity(self):
        rs = rule_set(["No spam or self-promotion", "Be civil"])
        result = match_reason("Be civil", rs)
        assert result.method is MatchMethod.EMBEDDING_SIMILARITY
        assert result.rule_number == 2
        assert result.similarity == pytest.approx(1.0, abs=1e-9)

    def test_similarity_argmax_prefers_lexical_overlap(self):
        rs = rule_set(["No spam or self-promotion", "Be civil"])
        number, sim = best_similarity(
            "removed for spamming links", rs, HashingNgramEncoder()
        )
        assert number == 1
        assert sim > 0

    def test_unrelated_reason_unmatched(self):
        rs = rule_set(["No spam or self-promotion", "Be civil"])
        encoder = HashingNgramEncoder()
        _, sim = best_similarity("thanks for participating", rs, encoder)
        assert sim < 0.85
        result = match_reason("thanks for participating", rs, encoder)
        assert result.method is MatchMethod.UNMATCHED
        assert result.rule_number is None

    def test_empty_rule_set_rejected(self):
        rs = RuleSet(community="x", instance="i", rules=())
        with pytest.raises(ValueError):
            match_reason("Rule 1", rs)

    def test_tie_break_lowest_number(self):
        class ConstantEncoder:
            dim = 4

            def encode(self, texts):
                return np.ones((len(texts), 4))

        rs = rule_set(["alpha one", "beta two", "gamma three"])
        result = match_reason("anything", rs, ConstantEncoder(), threshold=0.5)
        assert result.rule_number == 1

    def test_number_reference_invariant_under_permutation(self):
        texts = ["No spam here", "Be civil please", "Use spoiler tags"]
        rs = rule_set(texts)
        permuted = RuleSet(
            community="news",
            instance="lemmy.test",
            rules=(Rule(3, texts[2]), Rule(1, texts[0]), Rule(2, texts[1])),
        )
        a = match_reason("rule 2", rs)
        b = match_reason("rule 2", permuted)
        assert rs.rule(a.rule_number).text == permuted.rule(b.rule_number).text

    def test_similarity_argmax_text_invariant_under_permutation(self):
        texts = ["No spam or self-promotion", "Be civil please", "Use spoiler tags"]
        rs = rule_set(texts)
        reversed_rs = rules_from_texts(list(reversed(texts)), community="news")
        encoder = HashingNgramEncoder()
        n1, _ = best_similarity("spamming constantly", rs, encoder)
        n2, _ = best_similarity("spamming constantly", reversed_rs, encoder)
        assert rs.rule(n1).text == reversed_rs.rule(n2).text


class TestCategorize:
    def test_personal_attacks(self):
        tag = categorize_rule(Rule(1, "No personal attacks"))
        assert tag.categories & {"harassment", "incivility"}
        assert tag.categories <= CATEGORY_VOCABULARY

    def test_mark_spoilers_is_content(self):
        tag = categorize_rule(Rule(1, "Mark spoilers"))
        assert "content" in tag.categories

    def test_tag_all_posts_is_format(self):
        tag = categorize_rule(Rule(1, "Tag all posts"))
        assert "format" in tag.categories

    def test_unmappable_is_other(self):
        tag = categorize_rule(Rule(1, "zyxwv qqq unmatched gibberish"))
        assert tag.categories == {"other"}

    @given(st.text(min_size=1).filter(lambda s: s.strip()))
    def test_always_nonempty_subset(self, text):
        tag = categorize_rule(Rule(1, text))
        assert tag.categories
        assert tag.categories <= CATEGORY_VOCABULARY


class TestEncoder:
    def test_identical_texts_identical_vectors(self):
        enc = HashingNgramEncoder()
        v = enc.encode(["No spam or self-promotion", "No spam or self-promotion"])
        assert np.allclose(v[0], v[1])
        assert np.linalg.norm(v[0]) == pytest.approx(1.0)

    def test_deterministic_across_instances(self):
        a = HashingNgramEncoder().encode(["be civil"])
        b = HashingNgramEncoder().encode(["be civil"])
        assert np.array_equal(a, b)

    def test_empty_text_zero_vector(self):
        v = HashingNgramEncoder().encode([""])
        assert np.allclose(v, 0.0)


class TestFiftyCitationFixture:
    def test_fixture_all_match(self):
        # 50 explicit-citation phrasings over a 9-rule community
        rs = rule_set([f"Placeholder rule text number {i}" for i in range(1, 10)])
        templates = [
            "Rule {n}",
            "rule {n}",
            "RULE {n}",
            "Rule#{n}",
            "rule #{n}",
            "rule # {n}",
            "Removed: rule {n}",
            "violates rule {n}",
            "breaking rule {n} again",
            "#{n}",
        ]
        cases = [(t.format(n=n), n) for n in range(1, 6) for t in templates]
        assert len(cases) == 50
        hits = 0
        for reason, expected in cases:
            result = match_reason(reason, rs)
            if result.method is MatchMethod.NUMBER_REFERENCE and result.rule_number == expected:
                hits += 1
        assert hits == 50
