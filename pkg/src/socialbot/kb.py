"""Knowledge base: loading, indexing, lookups, related-concept joins.

On-disk layout (one directory):

    movies.tsv          tab-separated, IMDb-dump style columns
    people.tsv          tab-separated
    links.tsv           movie-person credits (cast and crew)
    books.dat           one record per line, `key=value` fields joined by `|`
    catalog_movies.dat  in-theater items for recommendations, same line format
    catalog_books.dat   bestseller items
    extra_rules.dat     cross-instance similarity rules

Every file opens with a fixed header line; loaders reject anything else.
Multi-valued TSV fields are comma-joined, ``\\N`` marks an absent value.
In `.dat` files multi-valued fields are comma-joined and `|` is reserved
as the field separator. Formats are documented in the README.

After loading, the KnowledgeBase is immutable; the extra-rules store is the
only mutable piece and serializes its writes.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from socialbot.model import Preference, RccCandidate, Topic, normalize

log = logging.getLogger(__name__)

MOVIE_HEADER = ["movie_id", "title", "release_year", "runtime", "rating",
                "countries", "languages", "genres", "plot_summary"]
PEOPLE_HEADER = ["person_id", "name", "birth_year", "death_year",
                 "professions", "representative_work"]
LINKS_HEADER = ["movie_id", "ordering", "person_id", "category", "character"]

BOOKS_MAGIC = "# format: books/1"
CATALOG_MOVIES_MAGIC = "# format: catalog-movies/1"
CATALOG_BOOKS_MAGIC = "# format: catalog-books/1"
EXTRA_RULES_MAGIC = "# format: extra-rules/1"

CAST_CATEGORIES = ("actor", "actress")
CREW_CATEGORIES = ("director", "writer", "editor", "composer", "producer", "cinematographer")
MAX_CAST = 10

NULL = "\\N"


class KbError(Exception):
    """Base for knowledge-base failures."""


class FormatError(KbError):
    def __init__(self, file: str, line: int, reason: str):
        super().__init__(f"{file}:{line}: {reason}")
        self.file = file
        self.line = line
        self.reason = reason


class DanglingReference(KbError):
    def __init__(self, person_id: str, where: str):
        super().__init__(f"unknown person id {person_id!r} referenced by {where}")
        self.person_id = person_id


class UnknownInstance(KbError):
    def __init__(self, topic: Topic, instance: str):
        super().__init__(f"no {topic.value} named {instance!r} in the knowledge base")
        self.topic = topic
        self.instance = instance


class UnknownTarget(KbError):
    def __init__(self, name: str):
        super().__init__(f"extra-rule target {name!r} does not resolve to a KB instance")
        self.name = name


@dataclass(frozen=True)
class MovieRecord:
    movie_id: str
    title: str
    release_year: Optional[int]
    runtime: Optional[int]
    rating: Optional[str]
    countries: tuple[str, ...]
    languages: tuple[str, ...]
    genres: tuple[str, ...]
    plot_summary: str
    cast: tuple[tuple[str, Optional[str]], ...] = ()  # (person_id, character)
    crew: dict = field(default_factory=dict)  # category -> tuple of person_ids


@dataclass(frozen=True)
class BookRecord:
    title: str
    series: Optional[str]
    author: str  # person_id or plain text
    rating: Optional[str]
    language: Optional[str]
    genres: tuple[str, ...]
    awards: tuple[str, ...]
    settings: tuple[str, ...]
    characters: tuple[str, ...]
    plot: str
    author_person: Optional[str] = None  # resolved person_id


@dataclass(frozen=True)
class PersonRecord:
    person_id: str
    name: str
    birth_year: Optional[int]
    death_year: Optional[int]
    professions: tuple[str, ...]
    representative_work: tuple[str, ...]


@dataclass(frozen=True)
class CatalogItem:
    """One recommendable in-theater movie or bestselling book."""

    topic: Topic
    title: str
    rank: int
    rating: Optional[str]
    genres: tuple[str, ...] = ()
    languages: tuple[str, ...] = ()
    countries: tuple[str, ...] = ()
    writers: tuple[str, ...] = ()
    actors: tuple[str, ...] = ()
    directors: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "topic": self.topic.value,
            "title": self.title,
            "rank": self.rank,
            "rating": self.rating,
            "genres": list(self.genres),
            "languages": list(self.languages),
            "countries": list(self.countries),
            "writers": list(self.writers),
            "actors": list(self.actors),
            "directors": list(self.directors),
        }


@dataclass(frozen=True)
class ExtraRccRule:
    """An LLM-proposed similarity link persisted into the relation store."""

    source_instance: str
    target_instance: str
    target_topic: Topic
    shared_property: str
    relation_text: str


class RelationKind(enum.IntEnum):
    """Canonical ordering of join kinds in related-concept enumeration."""

    SHARED_GENRE = 0
    SHARED_DIRECTOR = 1
    SHARED_ACTOR = 2
    SHARED_WRITER = 3
    SHARED_AUTHOR = 4
    CAST_MEMBER = 5
    CREW_MEMBER = 6
    FILMOGRAPHY = 7
    AUTHORSHIP = 8
    EXTRA = 9


_CREW_VERB = {
    "director": "directed it",
    "writer": "wrote it",
    "editor": "edited it",
    "composer": "composed its music",
    "producer": "produced it",
    "cinematographer": "shot it",
}


def _split_multi(raw: str) -> tuple[str, ...]:
    if raw == NULL or not raw.strip():
        return ()
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _opt(raw: str) -> Optional[str]:
    return None if raw == NULL or not raw.strip() else raw.strip()


def _opt_int(raw: str, file: str, line: int, what: str) -> Optional[int]:
    val = _opt(raw)
    if val is None:
        return None
    try:
        return int(val)
    except ValueError:
        raise FormatError(file, line, f"{what} must be an integer, got {val!r}") from None


def _read_tsv(path: Union[str, Path], header: list[str]):
    path = Path(path)
    rows = []
    with path.open(encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        if first.split("\t") != header:
            raise FormatError(path.name, 1, f"unknown header {first!r}")
        for lineno, raw in enumerate(fh, start=2):
            raw = raw.rstrip("\n")
            if not raw.strip():
                continue
            cols = raw.split("\t")
            if len(cols) != len(header):
                raise FormatError(path.name, lineno, f"expected {len(header)} columns, got {len(cols)}")
            rows.append((lineno, cols))
    return rows


def _read_dat(path: Union[str, Path], magic: str) -> list[tuple[int, dict]]:
    path = Path(path)
    records = []
    with path.open(encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        if first != magic:
            raise FormatError(path.name, 1, f"unknown header {first!r}")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = {}
            for segment in line.split("|"):
                if "=" not in segment:
                    raise FormatError(path.name, lineno, f"segment without '=': {segment!r}")
                key, value = segment.split("=", 1)
                fields[key.strip()] = value
            records.append((lineno, fields))
    return records


def _load_movies(path) -> dict[str, MovieRecord]:
    movies: dict[str, MovieRecord] = {}
    for lineno, cols in _read_tsv(path, MOVIE_HEADER):
        rec = MovieRecord(
            movie_id=cols[0],
            title=cols[1],
            release_year=_opt_int(cols[2], Path(path).name, lineno, "release_year"),
            runtime=_opt_int(cols[3], Path(path).name, lineno, "runtime"),
            rating=_opt(cols[4]),
            countries=_split_multi(cols[5]),
            languages=_split_multi(cols[6]),
            genres=_split_multi(cols[7]),
            plot_summary=_opt(cols[8]) or "",
        )
        key = normalize(rec.title)
        if not key:
            raise FormatError(Path(path).name, lineno, "empty title")
        if key in movies:
            raise FormatError(Path(path).name, lineno, f"duplicate title {rec.title!r}")
        movies[key] = rec
    return movies


def _load_people(path) -> dict[str, PersonRecord]:
    people: dict[str, PersonRecord] = {}
    for lineno, cols in _read_tsv(path, PEOPLE_HEADER):
        rec = PersonRecord(
            person_id=cols[0],
            name=cols[1],
            birth_year=_opt_int(cols[2], Path(path).name, lineno, "birth_year"),
            death_year=_opt_int(cols[3], Path(path).name, lineno, "death_year"),
            professions=_split_multi(cols[4]),
            representative_work=_split_multi(cols[5]),
        )
        if rec.person_id in people:
            raise FormatError(Path(path).name, lineno, f"duplicate person id {rec.person_id}")
        if rec.birth_year and rec.death_year and rec.death_year < rec.birth_year:
            raise FormatError(Path(path).name, lineno, "death_year before birth_year")
        people[rec.person_id] = rec
    return people


def _load_links(path) -> list[tuple[str, int, str, str, Optional[str]]]:
    links = []
    for lineno, cols in _read_tsv(path, LINKS_HEADER):
        category = cols[3].strip()
        if category not in CAST_CATEGORIES + CREW_CATEGORIES:
            raise FormatError(Path(path).name, lineno, f"unknown category {category!r}")
        ordering = _opt_int(cols[1], Path(path).name, lineno, "ordering") or 0
        links.append((cols[0], ordering, cols[2], category, _opt(cols[4])))
    return links


def _load_books(path) -> dict[str, BookRecord]:
    books: dict[str, BookRecord] = {}
    for lineno, fields in _read_dat(path, BOOKS_MAGIC):
        title = fields.get("title", "").strip()
        if not title:
            raise FormatError(Path(path).name, lineno, "missing title")
        key = normalize(title)
        if key in books:
            raise FormatError(Path(path).name, lineno, f"duplicate title {title!r}")
        books[key] = BookRecord(
            title=title,
            series=_opt(fields.get("series", "")),
            author=fields.get("author", "").strip(),
            rating=_opt(fields.get("rating", "")),
            language=_opt(fields.get("language", "")),
            genres=_split_multi(fields.get("genres", "")),
            awards=_split_multi(fields.get("awards", "")),
            settings=_split_multi(fields.get("settings", "")),
            characters=_split_multi(fields.get("characters", "")),
            plot=fields.get("plot", "").strip(),
        )
    return books


def _load_catalog(path, magic: str, topic: Topic) -> list[CatalogItem]:
    items = []
    for lineno, fields in _read_dat(path, magic):
        title = fields.get("title", "").strip()
        if not title:
            raise FormatError(Path(path).name, lineno, "missing title")
        try:
            rank = int(fields.get("rank", ""))
        except ValueError:
            raise FormatError(Path(path).name, lineno, "missing or bad rank") from None
        items.append(
            CatalogItem(
                topic=topic,
                title=title,
                rank=rank,
                rating=_opt(fields.get("rating", "")),
                genres=_split_multi(fields.get("genres", "")),
                languages=_split_multi(fields.get("languages", "")),
                countries=_split_multi(fields.get("countries", "")),
                writers=_split_multi(fields.get("writers", "")),
                actors=_split_multi(fields.get("actors", "")),
                directors=_split_multi(fields.get("directors", "")),
            )
        )
    items.sort(key=lambda item: (item.rank, normalize(item.title)))
    return items


class ExtraRuleStore:
    """File-backed set of extra relation rules. Single-writer."""

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path) if path else None
        self._rules: list[ExtraRccRule] = []
        if self.path and self.path.exists():
            for lineno, fields in _read_dat(self.path, EXTRA_RULES_MAGIC):
                try:
                    topic = Topic.parse(fields.get("topic", ""))
                except Exception:
                    raise FormatError(self.path.name, lineno, f"bad topic {fields.get('topic')!r}") from None
                self._rules.append(
                    ExtraRccRule(
                        source_instance=fields.get("source", "").strip(),
                        target_instance=fields.get("target", "").strip(),
                        target_topic=topic,
                        shared_property=fields.get("property", "").strip(),
                        relation_text=fields.get("relation", "").strip(),
                    )
                )

    def __iter__(self):
        return iter(self._rules)

    def __len__(self):
        return len(self._rules)

    def for_source(self, source: str) -> list[ExtraRccRule]:
        key = normalize(source)
        return [r for r in self._rules if normalize(r.source_instance) == key]

    def add(self, rule: ExtraRccRule) -> bool:
        """Insert the rule; returns False when it is already stored."""
        if rule in self._rules:
            return False
        self._rules.append(rule)
        self._persist()
        return True

    def _persist(self) -> None:
        if self.path is None:
            return
        lines = [EXTRA_RULES_MAGIC]
        for r in self._rules:
            lines.append(
                f"source={r.source_instance}|target={r.target_instance}"
                f"|topic={r.target_topic.value}|property={r.shared_property}"
                f"|relation={r.relation_text}"
            )
        self.path.write_text("\n".join(lines) + "\n", encoding="utf-8")


class KnowledgeBase:
    """Immutable indexed store of movies, books, people, and catalogs."""

    def __init__(
        self,
        movies: dict[str, MovieRecord],
        books: dict[str, BookRecord],
        people: dict[str, PersonRecord],
        movie_catalog: Sequence[CatalogItem] = (),
        book_catalog: Sequence[CatalogItem] = (),
        extra_rules: Optional[ExtraRuleStore] = None,
    ):
        self._movies = movies
        self._books = books
        self._people_by_id = people
        self.movie_catalog = list(movie_catalog)
        self.book_catalog = list(book_catalog)
        self.extra_rules = extra_rules if extra_rules is not None else ExtraRuleStore()

        self._people_by_name: dict[str, PersonRecord] = {}
        for person in people.values():
            self._people_by_name.setdefault(normalize(person.name), person)

        self._credits: dict[str, list[tuple[str, str, Optional[str], int]]] = {}
        self._movies_by_genre: dict[str, list[str]] = {}
        self._movies_by_person: dict[tuple[str, str], list[str]] = {}  # (category_kind, pid)
        for movie in movies.values():
            for genre in movie.genres:
                self._movies_by_genre.setdefault(normalize(genre), []).append(movie.title)
            for pid, character in movie.cast:
                self._movies_by_person.setdefault(("actor", pid), []).append(movie.title)
                self._credits.setdefault(pid, []).append((movie.title, "actor", character, 0))
            for category, pids in movie.crew.items():
                for pid in pids:
                    self._movies_by_person.setdefault((category, pid), []).append(movie.title)
                    self._credits.setdefault(pid, []).append((movie.title, category, None, 0))

        self._books_by_author: dict[str, list[str]] = {}
        self._books_by_genre: dict[str, list[str]] = {}
        self._books_by_person: dict[str, list[str]] = {}
        for book in books.values():
            self._books_by_author.setdefault(self._author_key(book), []).append(book.title)
            for genre in book.genres:
                self._books_by_genre.setdefault(normalize(genre), []).append(book.title)
            if book.author_person:
                self._books_by_person.setdefault(book.author_person, []).append(book.title)

        self._names = {
            Topic.movie: sorted((m.title for m in movies.values()), key=normalize),
            Topic.book: sorted((b.title for b in books.values()), key=normalize),
            Topic.person: sorted((p.name for p in people.values()), key=normalize),
        }

    @staticmethod
    def _author_key(book: BookRecord) -> str:
        return book.author_person or normalize(book.author)

    # -- basic access -----------------------------------------------------

    def counts(self) -> dict[str, int]:
        return {
            "movies": len(self._movies),
            "books": len(self._books),
            "people": len(self._people_by_id),
        }

    def movie(self, name: str) -> Optional[MovieRecord]:
        return self._movies.get(normalize(name))

    def book(self, name: str) -> Optional[BookRecord]:
        return self._books.get(normalize(name))

    def person(self, name: str) -> Optional[PersonRecord]:
        return self._people_by_name.get(normalize(name))

    def person_by_id(self, pid: str) -> Optional[PersonRecord]:
        return self._people_by_id.get(pid)

    def credits(self, pid: str) -> list[tuple[str, str, Optional[str], int]]:
        return self._credits.get(pid, [])

    def instance_names(self, topic: Topic) -> list[str]:
        return self._names[topic]

    def find_instance(self, topic: Topic, raw: str) -> Optional[str]:
        """Display name for an exact (normalized) match, else None."""
        key = normalize(raw)
        table = {Topic.movie: self._movies, Topic.book: self._books}.get(topic)
        if table is not None:
            rec = table.get(key)
            return rec.title if rec else None
        person = self._people_by_name.get(key)
        return person.name if person else None

    def has_instance(self, topic: Topic, name: str) -> bool:
        return self.find_instance(topic, name) is not None

    def popularity(self, topic: Topic, name: str) -> float:
        """Tie-break key for fuzzy matching: rating, or credit count for people."""
        if topic is Topic.movie:
            rec = self.movie(name)
            return _rating_value(rec.rating) if rec else 0.0
        if topic is Topic.book:
            rec = self.book(name)
            return _rating_value(rec.rating) if rec else 0.0
        person = self.person(name)
        if person is None:
            return 0.0
        return float(
            len(self._credits.get(person.person_id, []))
            + len(self._books_by_person.get(person.person_id, []))
        )

    def pronoun(self, person: PersonRecord) -> str:
        professions = {p.casefold() for p in person.professions}
        if "actress" in professions:
            return "she"
        if "actor" in professions:
            return "he"
        return "they"

    # -- property lookup ---------------------------------------------------

    def lookup_property(self, topic: Topic, instance: str, prop: str) -> list[str]:
        """Stored values for (instance, property), verbatim; [] when absent."""
        prop = normalize(prop)
        if topic is Topic.movie:
            return self._movie_property(instance, prop)
        if topic is Topic.book:
            return self._book_property(instance, prop)
        return self._person_property(instance, prop)

    def _movie_property(self, instance: str, prop: str) -> list[str]:
        rec = self.movie(instance)
        if rec is None:
            return []
        if prop == "release year":
            return [str(rec.release_year)] if rec.release_year is not None else []
        if prop == "runtime":
            return [str(rec.runtime)] if rec.runtime is not None else []
        if prop == "rating":
            return [rec.rating] if rec.rating else []
        if prop == "countries":
            return list(rec.countries)
        if prop == "languages":
            return list(rec.languages)
        if prop == "genres":
            return list(rec.genres)
        if prop == "plot summary":
            return [rec.plot_summary] if rec.plot_summary else []
        if prop == "cast":
            out = []
            for pid, character in rec.cast:
                person = self._people_by_id.get(pid)
                name = person.name if person else pid
                out.append(f"{name} as {character}" if character else name)
            return out
        category = {
            "directors": "director",
            "writers": "writer",
            "editors": "editor",
            "composers": "composer",
            "producers": "producer",
            "cinematographers": "cinematographer",
        }.get(prop)
        if category is not None:
            out = []
            for pid in rec.crew.get(category, ()):
                person = self._people_by_id.get(pid)
                out.append(person.name if person else pid)
            return out
        return []

    def _book_property(self, instance: str, prop: str) -> list[str]:
        rec = self.book(instance)
        if rec is None:
            return []
        if prop == "series":
            return [rec.series] if rec.series else []
        if prop == "author":
            if rec.author_person:
                person = self._people_by_id.get(rec.author_person)
                if person:
                    return [person.name]
            return [rec.author] if rec.author else []
        if prop == "rating":
            return [rec.rating] if rec.rating else []
        if prop == "language":
            return [rec.language] if rec.language else []
        if prop == "genres":
            return list(rec.genres)
        if prop == "awards":
            return list(rec.awards)
        if prop == "settings":
            return list(rec.settings)
        if prop == "characters":
            return list(rec.characters)
        if prop == "plot description":
            return [rec.plot] if rec.plot else []
        return []

    def _person_property(self, instance: str, prop: str) -> list[str]:
        rec = self.person(instance)
        if rec is None:
            return []
        if prop == "birth year":
            return [str(rec.birth_year)] if rec.birth_year is not None else []
        if prop == "death year":
            return [str(rec.death_year)] if rec.death_year is not None else []
        if prop == "profession":
            return list(rec.professions)
        if prop == "representative work":
            return list(rec.representative_work)
        return []

    # -- related concepts --------------------------------------------------

    def related_concepts(self, topic: Topic, instance: str) -> list[RccCandidate]:
        """All related topic instances, each justified by a verifiable
        relation, in canonical order (join kind, topic, title, relation)."""
        display = self.find_instance(topic, instance)
        if display is None:
            raise UnknownInstance(topic, instance)
        rows: list[tuple[RelationKind, Topic, str, str]] = []
        if topic is Topic.movie:
            rows.extend(self._movie_relations(self.movie(display)))
        elif topic is Topic.book:
            rows.extend(self._book_relations(self.book(display)))
        else:
            rows.extend(self._person_relations(self.person(display)))
        for rule in self.extra_rules.for_source(display):
            target = self.find_instance(rule.target_topic, rule.target_instance)
            if target is None:
                log.warning("extra rule targets unknown instance %r", rule.target_instance)
                continue
            rows.append((RelationKind.EXTRA, rule.target_topic, target, rule.relation_text))

        source_key = (topic, normalize(display))
        seen = set()
        unique = []
        for kind, cand_topic, name, relation in rows:
            if (cand_topic, normalize(name)) == source_key:
                continue
            dedup = (cand_topic, normalize(name), relation)
            if dedup in seen:
                continue
            seen.add(dedup)
            unique.append((kind, cand_topic, name, relation))
        unique.sort(key=lambda r: (r[0], r[1].value, normalize(r[2]), r[3]))
        return [
            RccCandidate(index=i, topic=t, instance=n, source_instance=display, relation=rel)
            for i, (kind, t, n, rel) in enumerate(unique, start=1)
        ]

    def _movie_relations(self, rec: MovieRecord):
        for genre in rec.genres:
            for title in self._movies_by_genre.get(normalize(genre), ()):
                yield (RelationKind.SHARED_GENRE, Topic.movie, title, f"both are {genre} movies")
        for kind, category in (
            (RelationKind.SHARED_DIRECTOR, "director"),
            (RelationKind.SHARED_WRITER, "writer"),
        ):
            verb = "directed both" if category == "director" else "wrote both"
            for pid in rec.crew.get(category, ()):
                person = self._people_by_id.get(pid)
                if person is None:
                    continue
                for title in self._movies_by_person.get((category, pid), ()):
                    yield (kind, Topic.movie, title, f"{person.name} {verb}")
        for pid, _character in rec.cast:
            person = self._people_by_id.get(pid)
            if person is None:
                continue
            for title in self._movies_by_person.get(("actor", pid), ()):
                yield (RelationKind.SHARED_ACTOR, Topic.movie, title, f"{person.name} acted in both")
            yield (
                RelationKind.CAST_MEMBER,
                Topic.person,
                person.name,
                f"{self.pronoun(person)} was part of its cast",
            )
        for category, pids in rec.crew.items():
            for pid in pids:
                person = self._people_by_id.get(pid)
                if person is None:
                    continue
                yield (
                    RelationKind.CREW_MEMBER,
                    Topic.person,
                    person.name,
                    f"{self.pronoun(person)} {_CREW_VERB[category]}",
                )

    def _book_relations(self, rec: BookRecord):
        author_display = rec.author
        if rec.author_person:
            person = self._people_by_id.get(rec.author_person)
            if person:
                author_display = person.name
        for title in self._books_by_author.get(self._author_key(rec), ()):
            yield (RelationKind.SHARED_AUTHOR, Topic.book, title, f"{author_display} wrote both")
        for genre in rec.genres:
            for title in self._books_by_genre.get(normalize(genre), ()):
                yield (RelationKind.SHARED_GENRE, Topic.book, title, f"both are {genre} books")

    def _person_relations(self, rec: PersonRecord):
        pron = self.pronoun(rec)
        for title, category, _character, _ordering in self._credits.get(rec.person_id, ()):
            if category == "actor":
                relation = f"{pron} appeared in it"
            else:
                relation = f"{pron} {_CREW_VERB[category]}"
            yield (RelationKind.FILMOGRAPHY, Topic.movie, title, relation)
        for title in self._books_by_person.get(rec.person_id, ()):
            yield (RelationKind.AUTHORSHIP, Topic.book, title, f"{pron} wrote it")

    # -- preferences and recommendations -----------------------------------

    def catalog(self, topic: Topic) -> list[CatalogItem]:
        if topic is Topic.movie:
            return self.movie_catalog
        if topic is Topic.book:
            return self.book_catalog
        return []

    def add_extra_rule(self, rule: ExtraRccRule) -> bool:
        """Validate the target against the KB and persist the rule.

        Returns False for an exact duplicate (idempotent insert)."""
        from socialbot.predparse import correct_name

        target, matched = correct_name(rule.target_instance, rule.target_topic, self)
        if not matched:
            raise UnknownTarget(rule.target_instance)
        canonical = ExtraRccRule(
            source_instance=rule.source_instance,
            target_instance=target,
            target_topic=rule.target_topic,
            shared_property=rule.shared_property,
            relation_text=rule.relation_text,
        )
        return self.extra_rules.add(canonical)


def _rating_value(rating: Optional[str]) -> float:
    try:
        return float(rating) if rating else 0.0
    except ValueError:
        return 0.0


def preference_satisfied(item: CatalogItem, pref: Preference) -> bool:
    """One preference against one catalog item, per the documented semantics:
    set membership for genre/language/countries/people, 'at least as good'
    for rating and popularity rank, all comparisons case-insensitive."""
    if pref.topic is not item.topic:
        return False
    value = normalize(pref.value)
    if pref.property == "genre":
        return value in {normalize(g) for g in item.genres}
    if pref.property == "language":
        return value in {normalize(v) for v in item.languages}
    if pref.property == "countries":
        return value in {normalize(v) for v in item.countries}
    if pref.property == "writer":
        return value in {normalize(v) for v in item.writers}
    if pref.property == "actor":
        return value in {normalize(v) for v in item.actors}
    if pref.property == "director":
        return value in {normalize(v) for v in item.directors}
    if pref.property == "rating":
        try:
            return _rating_value(item.rating) >= float(pref.value)
        except ValueError:
            return False
    if pref.property == "popularity rank":
        try:
            return item.rank <= float(pref.value)
        except ValueError:
            return False
    return False


def match_preferences(
    prefs: Sequence[Preference], catalog: Sequence[CatalogItem]
) -> list[tuple[CatalogItem, list[Preference]]]:
    """Each catalog item with the preferences it satisfies, best first
    (match count desc, then rank, then title)."""
    results = []
    for item in catalog:
        matched = [p for p in prefs if preference_satisfied(item, p)]
        results.append((item, matched))
    results.sort(key=lambda pair: (-len(pair[1]), pair[0].rank, normalize(pair[0].title)))
    return results


def load_kb(
    movie_path,
    book_path,
    people_path,
    link_path,
    *,
    movie_catalog_path=None,
    book_catalog_path=None,
    extra_rules_path=None,
) -> KnowledgeBase:
    """Load and cross-link all KB files; raises on format or reference errors."""
    movies = _load_movies(movie_path)
    people = _load_people(people_path)
    books = _load_books(book_path)
    links = _load_links(link_path)

    movies_by_id = {m.movie_id: key for key, m in movies.items()}
    cast_rows: dict[str, list[tuple[int, str, Optional[str]]]] = {}
    crew_rows: dict[str, dict[str, list[tuple[int, str]]]] = {}
    for movie_id, ordering, pid, category, character in links:
        if pid not in people:
            raise DanglingReference(pid, f"links row for movie {movie_id}")
        if movie_id not in movies_by_id:
            raise DanglingReference(movie_id, "links row (unknown movie id)")
        if category in CAST_CATEGORIES:
            cast_rows.setdefault(movie_id, []).append((ordering, pid, character))
        else:
            crew_rows.setdefault(movie_id, {}).setdefault(category, []).append((ordering, pid))

    linked: dict[str, MovieRecord] = {}
    for key, rec in movies.items():
        cast = tuple(
            (pid, character)
            for _o, pid, character in sorted(cast_rows.get(rec.movie_id, []), key=lambda r: r[0])
        )
        if len(cast) > MAX_CAST:
            raise FormatError("links.tsv", 0, f"{rec.title!r} has more than {MAX_CAST} cast rows")
        crew = {
            category: tuple(pid for _o, pid in sorted(rows, key=lambda r: r[0]))
            for category, rows in sorted(crew_rows.get(rec.movie_id, {}).items())
        }
        linked[key] = MovieRecord(
            movie_id=rec.movie_id,
            title=rec.title,
            release_year=rec.release_year,
            runtime=rec.runtime,
            rating=rec.rating,
            countries=rec.countries,
            languages=rec.languages,
            genres=rec.genres,
            plot_summary=rec.plot_summary,
            cast=cast,
            crew=crew,
        )

    people_by_name = {}
    for person in people.values():
        people_by_name.setdefault(normalize(person.name), person)
    resolved_books = {}
    for key, book in books.items():
        author_person = None
        if book.author.startswith("nm"):
            if book.author not in people:
                raise DanglingReference(book.author, f"book {book.title!r}")
            author_person = book.author
        else:
            match = people_by_name.get(normalize(book.author))
            if match is not None:
                author_person = match.person_id
        resolved_books[key] = BookRecord(
            title=book.title,
            series=book.series,
            author=book.author,
            rating=book.rating,
            language=book.language,
            genres=book.genres,
            awards=book.awards,
            settings=book.settings,
            characters=book.characters,
            plot=book.plot,
            author_person=author_person,
        )

    movie_catalog = (
        _load_catalog(movie_catalog_path, CATALOG_MOVIES_MAGIC, Topic.movie)
        if movie_catalog_path
        else []
    )
    book_catalog = (
        _load_catalog(book_catalog_path, CATALOG_BOOKS_MAGIC, Topic.book)
        if book_catalog_path
        else []
    )
    store = ExtraRuleStore(extra_rules_path)
    kb = KnowledgeBase(linked, resolved_books, people, movie_catalog, book_catalog, store)
    counts = kb.counts()
    log.info(
        "knowledge base loaded: %d movies, %d books, %d people",
        counts["movies"], counts["books"], counts["people"],
    )
    return kb


def load_kb_dir(directory: Union[str, Path]) -> KnowledgeBase:
    """Load a KB from the standard directory layout."""
    d = Path(directory)
    return load_kb(
        d / "movies.tsv",
        d / "books.dat",
        d / "people.tsv",
        d / "links.tsv",
        movie_catalog_path=(d / "catalog_movies.dat") if (d / "catalog_movies.dat").exists() else None,
        book_catalog_path=(d / "catalog_books.dat") if (d / "catalog_books.dat").exists() else None,
        extra_rules_path=d / "extra_rules.dat",
    )
