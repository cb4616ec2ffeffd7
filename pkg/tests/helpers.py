"""Shared test machinery: independent oracles and scripted-input generators.

Everything here re-derives expectations from raw fixture files or by
exhaustive scanning, independently of the production code paths it checks.
"""

from __future__ import annotations

import random
from pathlib import Path

from socialbot import textmatch
from socialbot.model import ParseResult, Preference, Theme, Topic, UserAttitude


def exhaustive_best_match(raw: str, candidates: list[str], popularity) -> tuple[str, float]:
    """Unpruned similarity scan with the same tie-break contract."""
    best = None
    best_key = (-1.0, 0.0)
    for cand in candidates:
        key = (textmatch.similarity(raw, cand), popularity(cand))
        if best is None or key > best_key or (key == best_key and cand < best):
            best, best_key = cand, key
    return best, best_key[0]


class RawKb:
    """Plain re-parse of the KB files, used as the lookup/join oracle."""

    def __init__(self, directory):
        directory = Path(directory)
        self.people = {}  # pid -> row dict
        self.person_name = {}
        for line in directory.joinpath("people.tsv").read_text().splitlines()[1:]:
            pid, name, birth, death, professions, rep = line.split("\t")
            row = {
                "pid": pid,
                "name": name,
                "birth": birth,
                "death": death,
                "professions": [] if professions == "\\N" else professions.split(","),
                "rep": [] if rep == "\\N" else rep.split(","),
            }
            self.people[pid] = row
            self.person_name[name.casefold()] = row

        self.movies = {}
        self.movie_by_id = {}
        for line in directory.joinpath("movies.tsv").read_text().splitlines()[1:]:
            mid, title, year, runtime, rating, countries, languages, genres, plot = (
                line.split("\t")
            )
            row = {
                "id": mid,
                "title": title,
                "year": year,
                "runtime": runtime,
                "rating": rating,
                "countries": [] if countries == "\\N" else countries.split(","),
                "languages": [] if languages == "\\N" else languages.split(","),
                "genres": [] if genres == "\\N" else genres.split(","),
                "plot": "" if plot == "\\N" else plot,
                "cast": [],
                "crew": {},
            }
            self.movies[title.casefold()] = row
            self.movie_by_id[mid] = row

        for line in directory.joinpath("links.tsv").read_text().splitlines()[1:]:
            mid, ordering, pid, category, character = line.split("\t")
            movie = self.movie_by_id[mid]
            if category in ("actor", "actress"):
                movie["cast"].append(
                    (int(ordering), pid, None if character == "\\N" else character)
                )
            else:
                movie["crew"].setdefault(category, []).append((int(ordering), pid))
        for movie in self.movies.values():
            movie["cast"].sort()
            for rows in movie["crew"].values():
                rows.sort()

        self.books = {}
        for line in directory.joinpath("books.dat").read_text().splitlines()[1:]:
            if not line.strip():
                continue
            fields = dict(seg.split("=", 1) for seg in line.split("|"))
            self.books[fields["title"].casefold()] = fields

        self.extra_rules = []
        rules_path = directory.joinpath("extra_rules.dat")
        if rules_path.exists():
            for line in rules_path.read_text().splitlines()[1:]:
                if line.strip():
                    self.extra_rules.append(dict(seg.split("=", 1) for seg in line.split("|")))

    # -- lookup oracle ----------------------------------------------------

    def movie_property(self, title: str, prop: str):
        movie = self.movies.get(title.casefold())
        if movie is None:
            return []
        simple = {
            "release year": [movie["year"]] if movie["year"] != "\\N" else [],
            "runtime": [movie["runtime"]] if movie["runtime"] != "\\N" else [],
            "rating": [movie["rating"]] if movie["rating"] != "\\N" else [],
            "countries": movie["countries"],
            "languages": movie["languages"],
            "genres": movie["genres"],
            "plot summary": [movie["plot"]] if movie["plot"] else [],
        }
        if prop in simple:
            return simple[prop]
        if prop == "cast":
            out = []
            for _o, pid, character in movie["cast"]:
                name = self.people[pid]["name"]
                out.append(f"{name} as {character}" if character else name)
            return out
        category = {
            "directors": "director", "writers": "writer", "editors": "editor",
            "composers": "composer", "producers": "producer",
            "cinematographers": "cinematographer",
        }.get(prop)
        if category:
            return [self.people[pid]["name"] for _o, pid in movie["crew"].get(category, [])]
        return []

    def person_property(self, name: str, prop: str):
        person = self.person_name.get(name.casefold())
        if person is None:
            return []
        if prop == "birth year":
            return [person["birth"]] if person["birth"] != "\\N" else []
        if prop == "death year":
            return [person["death"]] if person["death"] != "\\N" else []
        if prop == "profession":
            return person["professions"]
        if prop == "representative work":
            return person["rep"]
        return []

    def book_property(self, title: str, prop: str):
        book = self.books.get(title.casefold())
        if book is None:
            return []
        multi = {"genres", "awards", "settings", "characters"}
        key = {"plot description": "plot"}.get(prop, prop)
        if key in multi:
            return book.get(key, "").split(",") if book.get(key) else []
        if key == "author":
            author = book.get("author", "")
            if author.startswith("nm"):
                return [self.people[author]["name"]]
            return [author] if author else []
        value = book.get(key, "")
        return [value] if value else []

    # -- join oracle -------------------------------------------------------

    def _cast_names(self, title: str) -> set[str]:
        movie = self.movies[title.casefold()]
        return {self.people[pid]["name"] for _o, pid, _c in movie["cast"]}

    def _crew_names(self, title: str, category: str) -> set[str]:
        movie = self.movies[title.casefold()]
        return {self.people[pid]["name"] for _o, pid in movie["crew"].get(category, [])}

    def _book_author_key(self, title: str) -> str:
        book = self.books[title.casefold()]
        author = book.get("author", "")
        if author.startswith("nm"):
            return author
        person = self.person_name.get(author.casefold())
        return person["pid"] if person else author.casefold()

    def verify_relation(self, source_topic: str, source: str, candidate) -> bool:
        """Re-derive a related-concept row by direct record comparison."""
        target_topic = candidate.topic.value
        target = candidate.instance
        relation = candidate.relation

        if relation.startswith("it has a similar "):
            return any(
                r["source"].casefold() == source.casefold()
                and r["target"].casefold() == target.casefold()
                for r in self.extra_rules
            )
        if " acted in both" in relation:
            name = relation[: -len(" acted in both")]
            return name in self._cast_names(source) and name in self._cast_names(target)
        if " directed both" in relation:
            name = relation[: -len(" directed both")]
            return name in self._crew_names(source, "director") and name in self._crew_names(
                target, "director"
            )
        if " wrote both" in relation and target_topic == "movie":
            name = relation[: -len(" wrote both")]
            return name in self._crew_names(source, "writer") and name in self._crew_names(
                target, "writer"
            )
        if " wrote both" in relation and target_topic == "book":
            return self._book_author_key(source) == self._book_author_key(target)
        if relation.startswith("both are ") and relation.endswith(" movies"):
            genre = relation[len("both are ") : -len(" movies")]
            return (
                genre in self.movies[source.casefold()]["genres"]
                and genre in self.movies[target.casefold()]["genres"]
            )
        if relation.startswith("both are ") and relation.endswith(" books"):
            genre = relation[len("both are ") : -len(" books")]
            return (
                genre in self.books[source.casefold()].get("genres", "").split(",")
                and genre in self.books[target.casefold()].get("genres", "").split(",")
            )
        if relation.endswith("was part of its cast"):
            return target in self._cast_names(source)
        if source_topic == "movie" and target_topic == "person":
            # crew membership relations ("he directed it", "she composed its music")
            return any(target in self._crew_names(source, cat) for cat in
                       ("director", "writer", "editor", "composer", "producer",
                        "cinematographer"))
        if source_topic == "person" and target_topic == "movie":
            return source in self._cast_names(target) or any(
                source in self._crew_names(target, cat) for cat in
                ("director", "writer", "editor", "composer", "producer",
                 "cinematographer")
            )
        if source_topic == "person" and target_topic == "book":
            person = self.person_name[source.casefold()]
            return self._book_author_key(target) == person["pid"]
        return False


# -- scripted-input generators ------------------------------------------------


def random_text(rng: random.Random, alphabet: str, max_len: int = 24) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))


_ARG_ALPHABET = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " ',()#.!?-:;###\n\t\""
)


def random_theme(rng: random.Random, catalog) -> Theme:
    topic = rng.choice(list(Topic))
    props = catalog.properties(topic)
    return Theme(
        topic=topic,
        instance=random_text(rng, _ARG_ALPHABET).strip() or "X",
        property=rng.choice(props),
        content=random_text(rng, _ARG_ALPHABET) if rng.random() < 0.6 else None,
        attitude=rng.choice(list(UserAttitude)) if rng.random() < 0.7 else None,
        question=random_text(rng, _ARG_ALPHABET) if rng.random() < 0.2 else None,
    )


def random_parse_result(rng: random.Random, catalog) -> ParseResult:
    roll = rng.random()
    if roll < 0.05:
        return ParseResult(quit=True)
    if roll < 0.12:
        return ParseResult(irrelevant=True)
    themes = tuple(random_theme(rng, catalog) for _ in range(rng.randint(1, 3)))
    prefs = ()
    if rng.random() < 0.25:
        prefs = (
            Preference(
                topic=rng.choice([Topic.movie, Topic.book]),
                property=rng.choice(["genre", "actor", "rating", "language"]),
                value=random_text(rng, _ARG_ALPHABET).strip() or "x",
            ),
        )
    return ParseResult(themes=themes, preferences=prefs)


def scripted_parse_result(rng: random.Random, kb, catalog) -> ParseResult:
    """Simulation turns grounded in real KB instances, questions included."""
    roll = rng.random()
    if roll < 0.04:
        return ParseResult(irrelevant=True)
    themes = []
    for _ in range(rng.randint(1, 3)):
        topic = rng.choice([Topic.movie, Topic.book, Topic.person])
        names = kb.instance_names(topic)
        themes.append(
            Theme(
                topic=topic,
                instance=rng.choice(names),
                property=rng.choice(catalog.properties(topic)),
                attitude=rng.choice(list(UserAttitude)) if rng.random() < 0.8 else None,
                question="what about it" if rng.random() < 0.15 else None,
            )
        )
    prefs = ()
    if rng.random() < 0.15:
        prefs = (
            Preference(
                topic=Topic.movie,
                property=rng.choice(["genre", "actor", "language"]),
                value=rng.choice(["Drama", "Sci-Fi", "Leonardo DiCaprio", "English"]),
            ),
        )
    return ParseResult(themes=tuple(themes), preferences=prefs)
