import random

import pytest

from socialbot.kb import (
    BOOKS_MAGIC,
    CATALOG_MOVIES_MAGIC,
    DanglingReference,
    ExtraRccRule,
    FormatError,
    UnknownInstance,
    UnknownTarget,
    load_kb,
    load_kb_dir,
    match_preferences,
)
from socialbot.model import Preference, Topic

from .helpers import RawKb

MOVIE_HEADER = "movie_id\ttitle\trelease_year\truntime\trating\tcountries\tlanguages\tgenres\tplot_summary"
PEOPLE_HEADER = "person_id\tname\tbirth_year\tdeath_year\tprofessions\trepresentative_work"
LINKS_HEADER = "movie_id\tordering\tperson_id\tcategory\tcharacter"


def write_kb(tmp_path, movies="", people="", links="", books=""):
    (tmp_path / "movies.tsv").write_text(MOVIE_HEADER + "\n" + movies)
    (tmp_path / "people.tsv").write_text(PEOPLE_HEADER + "\n" + people)
    (tmp_path / "links.tsv").write_text(LINKS_HEADER + "\n" + links)
    (tmp_path / "books.dat").write_text(BOOKS_MAGIC + "\n" + books)
    return tmp_path


class TestLoading:
    def test_full_fixture_counts(self, full_kb):
        assert full_kb.counts() == {"movies": 931, "books": 528, "people": 5625}

    def test_empty_files_make_empty_kb(self, tmp_path):
        write_kb(tmp_path)
        kb = load_kb_dir(tmp_path)
        assert kb.counts() == {"movies": 0, "books": 0, "people": 0}
        assert kb.lookup_property(Topic.movie, "Anything", "rating") == []

    def test_unknown_person_reference_rejected(self, tmp_path):
        write_kb(
            tmp_path,
            movies="tt1\tSolo Film\t2000\t100\t7.0\tUSA\tEnglish\tDrama\tA plot.\n",
            links="tt1\t1\tnm404\tactor\tLead\n",
        )
        with pytest.raises(DanglingReference):
            load_kb_dir(tmp_path)

    def test_unknown_header_rejected(self, tmp_path):
        write_kb(tmp_path)
        (tmp_path / "movies.tsv").write_text("id\tname\n")
        with pytest.raises(FormatError) as exc:
            load_kb_dir(tmp_path)
        assert exc.value.line == 1

    def test_duplicate_normalized_title_rejected(self, tmp_path):
        write_kb(
            tmp_path,
            movies=(
                "tt1\tThe  Film\t2000\t100\t7.0\tUSA\tEnglish\tDrama\tx\n"
                "tt2\tthe film\t2001\t90\t6.0\tUSA\tEnglish\tDrama\ty\n"
            ),
        )
        with pytest.raises(FormatError):
            load_kb_dir(tmp_path)

    def test_cast_capped_at_ten(self, tmp_path):
        people = "".join(f"nm{i}\tPerson {i}\t1970\t\\N\tactor\t\\N\n" for i in range(11))
        links = "".join(f"tt1\t{i + 1}\tnm{i}\tactor\tRole {i}\n" for i in range(11))
        write_kb(
            tmp_path,
            movies="tt1\tBig Cast\t2000\t100\t7.0\tUSA\tEnglish\tDrama\tx\n",
            people=people,
            links=links,
        )
        with pytest.raises(FormatError):
            load_kb_dir(tmp_path)

    def test_death_before_birth_rejected(self, tmp_path):
        write_kb(tmp_path, people="nm1\tGhost\t1990\t1980\tactor\t\\N\n")
        with pytest.raises(FormatError):
            load_kb_dir(tmp_path)

    def test_book_author_resolution(self, small_kb):
        book = small_kb.book("The Hobbit")
        author = small_kb.person("J.R.R. Tolkien")
        assert book.author_person == author.person_id
        assert small_kb.lookup_property(Topic.book, "The Hobbit", "author") == [
            "J.R.R. Tolkien"
        ]

    def test_signature_with_explicit_paths(self, small_kb_dir):
        kb = load_kb(
            small_kb_dir / "movies.tsv",
            small_kb_dir / "books.dat",
            small_kb_dir / "people.tsv",
            small_kb_dir / "links.tsv",
        )
        assert kb.counts()["movies"] > 0
        assert kb.movie_catalog == []  # catalogs are optional inputs


class TestLookup:
    def test_cast_pairs_rendered(self, small_kb):
        values = small_kb.lookup_property(Topic.movie, "Hitchcock", "cast")
        assert "Currie Graham as Flack" in values

    def test_unknown_instance_is_empty(self, small_kb):
        assert small_kb.lookup_property(Topic.movie, "Nonexistent Film 123", "rating") == []

    def test_generated_property_not_stored(self, small_kb):
        assert small_kb.lookup_property(Topic.movie, "Inception", "plot episode") == []

    def test_values_match_raw_file_oracle(self, small_kb, small_kb_dir):
        raw = RawKb(small_kb_dir)
        for title in ["Inception", "Titanic", "The Departed"]:
            for prop in ["release year", "rating", "genres", "cast", "directors",
                         "writers", "plot summary", "runtime"]:
                assert small_kb.lookup_property(Topic.movie, title, prop) == \
                    raw.movie_property(title, prop)
        for name in ["Leonardo DiCaprio", "Gloria Stuart"]:
            for prop in ["birth year", "death year", "profession", "representative work"]:
                assert small_kb.lookup_property(Topic.person, name, prop) == \
                    raw.person_property(name, prop)

    def test_person_unstored_properties_empty(self, small_kb):
        assert small_kb.lookup_property(Topic.person, "Leonardo DiCaprio", "skill") == []
        assert small_kb.lookup_property(Topic.person, "Tom Hanks", "death year") == []


class TestRelatedConcepts:
    def test_shared_actor_candidate(self, small_kb):
        candidates = small_kb.related_concepts(Topic.movie, "Inception")
        wolf = [c for c in candidates if c.instance == "The Wolf of Wall Street"]
        assert wolf and "Leonardo DiCaprio" in wolf[0].relation

    def test_cast_membership_candidate(self, small_kb):
        candidates = small_kb.related_concepts(Topic.movie, "Don't Look Up")
        lawrence = [
            c for c in candidates
            if c.topic is Topic.person and c.instance == "Jennifer Lawrence"
        ]
        assert lawrence and lawrence[0].relation == "she was part of its cast"

    def test_extra_rule_candidates(self, small_kb):
        candidates = small_kb.related_concepts(Topic.movie, "Titanic")
        targets = {c.instance for c in candidates if "similar plot episode" in c.relation}
        assert targets == {"The Dark Knight Rises", "The Hunger Games: Mockingjay - Part 2"}

    def test_isolated_instance_has_no_candidates(self, tmp_path):
        write_kb(
            tmp_path,
            movies="tt1\tAlone\t2000\t100\t7.0\tUSA\tEnglish\tExperimental\tx\n",
        )
        kb = load_kb_dir(tmp_path)
        assert kb.related_concepts(Topic.movie, "Alone") == []

    def test_unknown_instance_raises(self, small_kb):
        with pytest.raises(UnknownInstance):
            small_kb.related_concepts(Topic.movie, "No Such Film")

    def test_indexes_are_contiguous_and_deterministic(self, small_kb):
        first = small_kb.related_concepts(Topic.movie, "Inception")
        second = small_kb.related_concepts(Topic.movie, "Inception")
        assert first == second
        assert [c.index for c in first] == list(range(1, len(first) + 1))

    def test_rows_are_unique(self, small_kb):
        candidates = small_kb.related_concepts(Topic.movie, "Inception")
        rows = [(c.topic, c.instance, c.relation) for c in candidates]
        assert len(rows) == len(set(rows))

    def test_soundness_against_raw_join_oracle(self, small_kb, small_kb_dir):
        raw = RawKb(small_kb_dir)
        rng = random.Random(5)
        instances = (
            [(Topic.movie, n) for n in small_kb.instance_names(Topic.movie)]
            + [(Topic.book, n) for n in small_kb.instance_names(Topic.book)]
            + [(Topic.person, n) for n in rng.sample(small_kb.instance_names(Topic.person), 20)]
        )
        for topic, name in instances:
            for cand in small_kb.related_concepts(topic, name):
                assert raw.verify_relation(topic.value, name, cand), (
                    f"unverifiable relation {cand}"
                )

    def test_shared_genre_symmetry(self, small_kb):
        names = small_kb.instance_names(Topic.movie)
        for name in names:
            for cand in small_kb.related_concepts(Topic.movie, name):
                if not cand.relation.startswith("both are "):
                    continue
                reverse = small_kb.related_concepts(cand.topic, cand.instance)
                assert any(
                    r.instance == name and r.relation == cand.relation for r in reverse
                )

    def test_book_shared_author(self, small_kb):
        candidates = small_kb.related_concepts(Topic.book, "The Hobbit")
        lotr = [c for c in candidates if c.instance == "The Lord of the Rings"]
        assert any("wrote both" in c.relation for c in lotr)

    def test_person_filmography(self, small_kb):
        candidates = small_kb.related_concepts(Topic.person, "Jennifer Lawrence")
        houses = [c for c in candidates if c.instance == "House at the End of the Street"]
        assert houses and houses[0].relation == "she appeared in it"


class TestPreferences:
    def test_two_matched_properties(self, small_kb):
        prefs = [
            Preference(Topic.movie, "genre", "crime"),
            Preference(Topic.movie, "actor", "Leonardo DiCaprio"),
        ]
        results = match_preferences(prefs, small_kb.movie_catalog)
        best, matched = results[0]
        assert best.title == "Killers of the Flower Moon"
        assert len(matched) == 2

    def test_no_preferences_matches_everything_with_zero(self, small_kb):
        results = match_preferences([], small_kb.movie_catalog)
        assert len(results) == len(small_kb.movie_catalog)
        assert all(matched == [] for _item, matched in results)
        # sorted by rank when counts tie
        assert [item.rank for item, _ in results] == sorted(
            item.rank for item in small_kb.movie_catalog
        )

    def test_rating_threshold_is_at_least(self, small_kb):
        too_high = Preference(Topic.movie, "rating", "9")
        results = dict(
            (item.title, matched)
            for item, matched in match_preferences([too_high], small_kb.movie_catalog)
        )
        assert results["Killers of the Flower Moon"] == []  # rated 7.7
        reachable = Preference(Topic.movie, "rating", "8")
        results = dict(
            (item.title, matched)
            for item, matched in match_preferences([reachable], small_kb.movie_catalog)
        )
        assert len(results["Dune Part Two"]) == 1  # rated 8.3

    def test_popularity_rank_is_at_most(self, small_kb):
        pref = Preference(Topic.movie, "popularity rank", "2")
        matched_titles = {
            item.title
            for item, matched in match_preferences([pref], small_kb.movie_catalog)
            if matched
        }
        assert matched_titles == {"Dune Part Two", "Killers of the Flower Moon"}

    def test_topic_must_match(self, small_kb):
        pref = Preference(Topic.book, "genre", "sci-fi")
        assert all(
            matched == []
            for _item, matched in match_preferences([pref], small_kb.movie_catalog)
        )


class TestExtraRules:
    def test_add_and_enumerate(self, fresh_kb):
        rule = ExtraRccRule(
            source_instance="Inception",
            target_instance="shutter island",  # resolved via fuzzy match
            target_topic=Topic.movie,
            shared_property="plot episode",
            relation_text="it has a similar plot episode: reality bends around the hero",
        )
        assert fresh_kb.add_extra_rule(rule) is True
        candidates = fresh_kb.related_concepts(Topic.movie, "Inception")
        assert any(
            c.instance == "Shutter Island" and "reality bends" in c.relation
            for c in candidates
        )

    def test_duplicate_insert_is_idempotent(self, fresh_kb):
        rule = ExtraRccRule("Titanic", "Batman Begins", Topic.movie, "scene", "it has a similar scene: x")
        assert fresh_kb.add_extra_rule(rule) is True
        before = len(fresh_kb.extra_rules)
        assert fresh_kb.add_extra_rule(rule) is False
        assert len(fresh_kb.extra_rules) == before

    def test_unknown_target_rejected(self, fresh_kb):
        rule = ExtraRccRule("Titanic", "Unknown Movie XYZ", Topic.movie, "scene", "r")
        with pytest.raises(UnknownTarget):
            fresh_kb.add_extra_rule(rule)

    def test_rules_persist_to_file(self, tmp_path):
        from socialbot import kbgen

        kbgen.generate_small_kb(tmp_path / "kb")
        kb = load_kb_dir(tmp_path / "kb")
        kb.add_extra_rule(
            ExtraRccRule("Inception", "The Prestige", Topic.movie, "technique",
                         "it has a similar technique: nested structure")
        )
        reloaded = load_kb_dir(tmp_path / "kb")
        assert any(
            r.target_instance == "The Prestige" for r in reloaded.extra_rules
        )


class TestCatalogFiles:
    def test_bad_catalog_header_rejected(self, tmp_path):
        write_kb(tmp_path)
        (tmp_path / "catalog_movies.dat").write_text("# format: wrong/9\n")
        with pytest.raises(FormatError):
            load_kb_dir(tmp_path)

    def test_catalog_rank_required(self, tmp_path):
        write_kb(tmp_path)
        (tmp_path / "catalog_movies.dat").write_text(
            CATALOG_MOVIES_MAGIC + "\ntitle=No Rank Here|rating=7.0\n"
        )
        with pytest.raises(FormatError):
            load_kb_dir(tmp_path)
