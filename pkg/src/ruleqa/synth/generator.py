"""Deterministic synthetic moderation benchmark.

Builds a seed-fixed corpus of communities, each with a numbered rule list
drawn from rule archetypes, plus safe and violating comments. Violations
are keyword-linked to their gold rule so the task is learnable; a
configurable number of communities draw their rule paraphrases and
comment templates from held-out pools (anchors shared, surface forms
disjoint) to exercise out-of-distribution evaluation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from ..ingest.types import ModerationRecord
from ..rules.types import Rule, RuleSet


@dataclass(frozen=True)
class Archetype:
    name: str
    category: str
    # rule paraphrases: [held-in...] and [held-out...]
    rules_in: tuple[str, ...]
    rules_out: tuple[str, ...]
    keywords: tuple[str, ...]
    # violation templates with a {kw} slot
    templates_in: tuple[str, ...]
    templates_out: tuple[str, ...]


ARCHETYPES: tuple[Archetype, ...] = (
    Archetype(
        name="spam",
        category="spam",
        rules_in=(
            "No spam or advertising of any kind",
            "Spam and self promotion are not allowed here",
            "Do not post spam or referral links",
        ),
        rules_out=(
            "Posting spam or promotional content gets removed",
            "Keep spam, ads and affiliate schemes out of this community",
        ),
        keywords=(
            "buy now", "discount code", "crypto giveaway", "free followers",
            "promo deal", "cheap pills", "referral bonus", "limited offer",
        ),
        templates_in=(
            "check out this {kw} on my site",
            "hey everyone {kw} just for you today",
            "click my profile for the {kw} link",
        ),
        templates_out=(
            "don't miss the {kw} friends",
            "my store has a {kw} running right now",
        ),
    ),
    Archetype(
        name="civility",
        category="incivility",
        rules_in=(
            "Be civil and polite to other users",
            "No insults or name calling in comments",
            "Stay civil, no swearing at people",
        ),
        rules_out=(
            "Civil discussion only, insults are removed",
            "Remain polite and civil at all times",
        ),
        keywords=(
            "you idiot", "what a moron", "total clown", "absolute loser",
            "you buffoon", "pathetic fool",
        ),
        templates_in=(
            "honestly {kw} and everyone knows it",
            "{kw} why do you even comment",
            "only {kw} would write that",
        ),
        templates_out=(
            "typical reply from {kw} around here",
            "{kw} is all i can say to this",
        ),
    ),
    Archetype(
        name="hate",
        category="hate",
        rules_in=(
            "No hate speech or slurs are tolerated",
            "Hate speech and bigotry will be removed",
            "Do not post hateful or racist content",
        ),
        rules_out=(
            "Hateful remarks and slurs get you banned",
            "Zero tolerance for hate speech of any form",
        ),
        keywords=(
            "racist nonsense", "bigoted rant", "hateful garbage",
            "xenophobic take", "sexist drivel",
        ),
        templates_in=(
            "posting some {kw} about that group",
            "this thread is full of {kw} again",
            "more {kw} from the usual crowd",
        ),
        templates_out=(
            "cannot believe the {kw} in here",
            "dropping {kw} like it is normal",
        ),
    ),
    Archetype(
        name="doxxing",
        category="doxxing",
        rules_in=(
            "No doxxing or sharing personal information",
            "Do not post anyone's personal info or address",
            "Sharing private information is banned",
        ),
        rules_out=(
            "Never reveal personal info of other users",
            "Posting someone's private details is forbidden",
        ),
        keywords=(
            "home address", "phone number", "real name", "license plate",
            "workplace location",
        ),
        templates_in=(
            "i found his {kw} and posted it",
            "here is her {kw} everyone",
            "someone leaked the {kw} in chat",
        ),
        templates_out=(
            "dropping the {kw} for the record",
            "that user's {kw} is now public",
        ),
    ),
    Archetype(
        name="format",
        category="format",
        rules_in=(
            "Tag all posts with the correct flair",
            "Use the proper post format and tags",
            "Titles must follow the tag format",
        ),
        rules_out=(
            "Follow the required flair and tag format",
            "Posts need correct tags in the title",
        ),
        keywords=(
            "missing flair", "wrong tag", "untagged post", "broken format",
            "all caps title",
        ),
        templates_in=(
            "submitted another {kw} sorry mods",
            "this one has a {kw} again",
            "my post went up with a {kw}",
        ),
        templates_out=(
            "yet another {kw} in the queue",
            "ignoring the rules with a {kw}",
        ),
    ),
    Archetype(
        name="offtopic",
        category="off-topic",
        rules_in=(
            "Stay on topic in every thread",
            "No off topic discussion in comments",
            "Keep comments relevant and on topic",
        ),
        rules_out=(
            "Off topic chatter will be removed",
            "Comments must stay relevant to the post topic",
        ),
        keywords=(
            "unrelated tangent", "off topic rant", "random derail",
            "wrong community", "irrelevant story",
        ),
        templates_in=(
            "starting an {kw} about my cat",
            "sorry for the {kw} but anyway",
            "here comes an {kw} nobody asked for",
        ),
        templates_out=(
            "one more {kw} to ignore",
            "an {kw} in the middle of the thread",
        ),
    ),
    Archetype(
        name="content",
        category="content",
        rules_in=(
            "Mark spoilers and NSFW content properly",
            "No NSFW content without a spoiler mark",
            "Spoilers must be marked before posting",
        ),
        rules_out=(
            "NSFW and spoilers require proper marking",
            "Always mark spoiler content in advance",
        ),
        keywords=(
            "unmarked spoiler", "nsfw image", "graphic picture",
            "spoiler in title", "explicit clip",
        ),
        templates_in=(
            "posted an {kw} from the finale",
            "careful there is an {kw} below",
            "thread has an {kw} at the top",
        ),
        templates_out=(
            "warning an {kw} got through",
            "someone slipped an {kw} in again",
        ),
    ),
    Archetype(
        name="harassment",
        category="harassment",
        rules_in=(
            "No personal attacks or harassment",
            "Harassing or targeting users is banned",
            "Do not harass or threaten other members",
        ),
        rules_out=(
            "Harassment and targeted attacks are removed",
            "No stalking, threats or harassment",
        ),
        keywords=(
            "keep stalking", "targeted harassment", "veiled threat",
            "constant bullying", "follow you home",
        ),
        templates_in=(
            "i will {kw} until you quit",
            "enjoying the {kw} campaign against him",
            "that reads like a {kw} to me",
        ),
        templates_out=(
            "running a {kw} thread again",
            "continuing the {kw} in replies",
        ),
    ),
    Archetype(
        name="meta",
        category="meta",
        rules_in=(
            "No meta complaints about moderators",
            "Do not discuss moderator actions in threads",
            "Meta discussion of mods belongs in modmail",
        ),
        rules_out=(
            "Complaints about moderation go to modmail only",
            "Meta posts about moderator decisions are removed",
        ),
        keywords=(
            "mods are corrupt", "moderator abuse", "power tripping mods",
            "banned unfairly", "censorship by mods",
        ),
        templates_in=(
            "classic {kw} in this community",
            "everyone sees the {kw} here",
            "daily reminder that {kw} happens",
        ),
        templates_out=(
            "proof of {kw} once more",
            "the {kw} continues unchecked",
        ),
    ),
    Archetype(
        name="trolling",
        category="trolling",
        rules_in=(
            "No trolling or bait posts",
            "Trolling and flame bait are not allowed",
            "Do not troll or provoke other users",
        ),
        rules_out=(
            "Bait and troll comments get removed",
            "Obvious trolling earns a ban",
        ),
        keywords=(
            "obvious bait", "troll attempt", "flame bait", "rage bait",
            "sealioning again",
        ),
        templates_in=(
            "nice {kw} you posted there",
            "feeding the {kw} as usual",
            "this is {kw} and nothing else",
        ),
        templates_out=(
            "another {kw} for the pile",
            "pure {kw} right here",
        ),
    ),
)

SAFE_TEMPLATES_IN = (
    "the weather was really nice today",
    "i agree with this article completely",
    "thanks for sharing that link",
    "great photo of the mountains",
    "interesting point about the economy",
    "my garden is doing well this spring",
    "that recipe turned out delicious",
    "the game last night was exciting",
    "looking forward to the next update",
    "good summary of the situation",
)

SAFE_TEMPLATES_OUT = (
    "lovely sunset over the lake yesterday",
    "appreciate the thoughtful writeup here",
    "the concert downtown sounded wonderful",
    "fresh bread from the bakery this morning",
)

FILLERS = (
    "honestly", "frankly", "also", "well", "anyway", "btw", "fwiw",
    "imo", "basically", "still",
)


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 1234
    n_communities: int = 12
    rules_per_community: int = 6
    n_comments: int = 2000
    n_holdout_communities: int = 2
    safe_fraction: float = 0.5


@dataclass
class SynthCorpus:
    records: list[ModerationRecord] = field(default_factory=list)
    rule_sets: dict[str, RuleSet] = field(default_factory=dict)
    holdout_communities: list[str] = field(default_factory=list)
    # community -> rule number -> archetype name (for corpus introspection)
    gold_archetypes: dict[str, dict[int, str]] = field(default_factory=dict)

    def main_records(self) -> list[ModerationRecord]:
        held = set(self.holdout_communities)
        return [r for r in self.records if r.community not in held]

    def holdout_records(self) -> list[ModerationRecord]:
        held = set(self.holdout_communities)
        return [r for r in self.records if r.community in held]


def generate_corpus(config: SynthConfig = SynthConfig()) -> SynthCorpus:
    """Build the benchmark corpus; identical seeds yield identical output."""
    if config.n_holdout_communities >= config.n_communities:
        raise ValueError("must keep at least one held-in community")
    if config.rules_per_community > len(ARCHETYPES):
        raise ValueError(f"at most {len(ARCHETYPES)} rules per community")

    rng = random.Random(config.seed)
    corpus = SynthCorpus()
    epoch = datetime(2024, 6, 1, tzinfo=timezone.utc)

    communities: list[tuple[str, bool]] = []
    for i in range(config.n_communities):
        held_out = i >= config.n_communities - config.n_holdout_communities
        name = f"synthcomm{i:02d}"
        communities.append((name, held_out))
        if held_out:
            corpus.holdout_communities.append(name)

    for name, held_out in communities:
        chosen = rng.sample(ARCHETYPES, config.rules_per_community)
        rules = []
        arch_by_number: dict[int, str] = {}
        for number, arch in enumerate(chosen, start=1):
            pool = arch.rules_out if held_out else arch.rules_in
            rules.append(Rule(number, rng.choice(pool)))
            arch_by_number[number] = arch.name
        corpus.rule_sets[name] = RuleSet(
            community=name,
            instance="synth.local",
            rules=tuple(rules),
            snapshot_at=epoch,
        )
        corpus.gold_archetypes[name] = arch_by_number

    arch_index = {a.name: a for a in ARCHETYPES}
    for i in range(config.n_comments):
        name, held_out = communities[i % len(communities)]
        rule_set = corpus.rule_sets[name]
        safe = rng.random() < config.safe_fraction
        created = epoch + timedelta(minutes=i)
        filler = rng.choice(FILLERS)
        if safe:
            pool = SAFE_TEMPLATES_OUT if held_out else SAFE_TEMPLATES_IN
            text = f"{rng.choice(pool)} {filler}"
            corpus.records.append(
                ModerationRecord(
                    id=f"synth{i:05d}",
                    community=name,
                    instance="synth.local",
                    comment_text=text,
                    removed=False,
                    reason=None,
                    gold_rule_number=0,
                    created_at=created,
                )
            )
            continue
        gold = rng.randint(1, len(rule_set))
        arch = arch_index[corpus.gold_archetypes[name][gold]]
        template_pool = arch.templates_out if held_out else arch.templates_in
        keyword = rng.choice(arch.keywords)
        text = f"{rng.choice(template_pool).format(kw=keyword)} {filler}"
        corpus.records.append(
            ModerationRecord(
                id=f"synth{i:05d}",
                community=name,
                instance="synth.local",
                comment_text=text,
                removed=True,
                reason=f"Rule {gold}",
                gold_rule_number=gold,
                created_at=created,
            )
        )
    return corpus
