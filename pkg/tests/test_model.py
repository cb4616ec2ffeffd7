import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialbot.model import (
    BotAttitude,
    ParseResult,
    Preference,
    PropertyCatalog,
    Theme,
    Topic,
    UnknownPreferenceProperty,
    UnknownProperty,
    UnknownTopic,
    UserAttitude,
    validate_theme,
)

from .helpers import random_parse_result


class TestEnums:
    def test_topic_closed(self):
        assert Topic.parse("movie") is Topic.movie
        assert Topic.parse("People") is Topic.person  # prompt-ontology alias
        with pytest.raises(UnknownTopic):
            Topic.parse("sport")

    def test_attitude_sets_are_distinct(self):
        assert {a.value for a in UserAttitude} == {"positive", "negative", "ask", "argue"}
        assert {a.value for a in BotAttitude} == {
            "positive", "negative", "ask", "acknowledge",
        }
        with pytest.raises(ValueError):
            UserAttitude("acknowledge")
        with pytest.raises(ValueError):
            BotAttitude("argue")

    def test_preference_property_enforced(self):
        Preference(Topic.movie, "genre", "sci-fi")
        Preference(Topic.movie, "Genres", "sci-fi")  # alias, normalized
        with pytest.raises(UnknownPreferenceProperty):
            Preference(Topic.movie, "mood", "cozy")


class TestValidateTheme:
    def test_catalog_listed_property_passes(self, catalog):
        theme = Theme(Topic.movie, "Inception", "plot episode")
        assert validate_theme(theme, catalog) is theme

    def test_empty_property_rejected(self, catalog):
        with pytest.raises(UnknownProperty):
            validate_theme(Theme(Topic.movie, "Inception", ""), catalog)

    def test_movie_only_property_rejected_for_books(self, catalog):
        with pytest.raises(UnknownProperty):
            validate_theme(Theme(Topic.book, "X", "cinematography"), catalog)


class TestPropertyCatalog:
    def test_parse_sections_and_comments(self):
        catalog = PropertyCatalog.parse(
            "# header\n[movie]\nscene  # inline\nlines\n\n[book]\nsymbolism\n"
        )
        assert catalog.properties(Topic.movie) == ["scene", "lines"]
        assert (Topic.book, "symbolism") in catalog
        assert (Topic.book, "scene") not in catalog

    def test_canonical_spelling_is_case_insensitive(self, catalog):
        assert catalog.canonical(Topic.movie, "Plot  Episode") == "plot episode"

    def test_default_covers_trace_properties(self, catalog):
        for topic, prop in [
            (Topic.movie, "plot episode"),
            (Topic.movie, "social impact"),
            (Topic.person, "filmography"),
            (Topic.person, "acting skill"),
            (Topic.book, "symbolism"),
        ]:
            assert catalog.canonical(topic, prop) is not None
        # free-chat movie property absent from books
        assert catalog.canonical(Topic.book, "plot episode") is None


class TestSerialization:
    def test_irrelevant_cleared_when_themes_present(self):
        result = ParseResult(
            themes=(Theme(Topic.movie, "Inception", "scene"),), irrelevant=True
        )
        assert result.irrelevant is False

    def test_roundtrip_seeded_sample(self, catalog):
        rng = random.Random(99)
        for _ in range(500):
            result = random_parse_result(rng, catalog)
            assert ParseResult.from_dict(result.to_dict()) == result

    @settings(max_examples=200)
    @given(data=st.data())
    def test_roundtrip_hypothesis(self, data, catalog):
        text = st.text(min_size=1, max_size=30)
        theme = Theme(
            topic=data.draw(st.sampled_from(list(Topic))),
            instance=data.draw(text),
            property=data.draw(st.sampled_from(catalog.properties(Topic.movie))),
            content=data.draw(st.none() | text),
            attitude=data.draw(st.none() | st.sampled_from(list(UserAttitude))),
            question=data.draw(st.none() | text),
        )
        result = ParseResult(themes=(theme,), quit=data.draw(st.booleans()))
        assert ParseResult.from_dict(result.to_dict()) == result
