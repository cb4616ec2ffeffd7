"""Deterministic knowledge-base fixture generator.

Writes the full file layout the loader understands. A curated core of
well-known movies, books, and people gives the engine real material to
talk about (and gives the test suite stable joins); synthetic filler rows
pad the corpus to its shipped scale of 931 movies, 528 books, and 5625
people. Output is a pure function of the seed.
"""

from __future__ import annotations

import random
from pathlib import Path

from socialbot.kb import (
    BOOKS_MAGIC,
    CATALOG_BOOKS_MAGIC,
    CATALOG_MOVIES_MAGIC,
    EXTRA_RULES_MAGIC,
    LINKS_HEADER,
    MOVIE_HEADER,
    NULL,
    PEOPLE_HEADER,
)

FULL_MOVIES = 931
FULL_BOOKS = 528
FULL_PEOPLE = 5625

# (name, birth, death, professions)
CURATED_PEOPLE = [
    ("Leonardo DiCaprio", 1974, None, "actor,producer"),
    ("Jennifer Lawrence", 1990, None, "actress,producer"),
    ("Currie Graham", 1967, None, "actor"),
    ("Christopher Nolan", 1970, None, "director,writer,producer"),
    ("Jonathan Nolan", 1976, None, "writer,producer"),
    ("Martin Scorsese", 1942, None, "director,producer,writer"),
    ("Steven Spielberg", 1946, None, "director,producer,writer"),
    ("James Cameron", 1954, None, "director,writer,producer"),
    ("Adam McKay", 1968, None, "director,writer,producer"),
    ("Mark Tonderai", 1972, None, "director"),
    ("Sacha Gervasi", 1966, None, "director,writer"),
    ("Francis Lawrence", 1971, None, "director,producer"),
    ("Gary Ross", 1956, None, "director,writer,producer"),
    ("Baz Luhrmann", 1962, None, "director,writer,producer"),
    ("David O. Russell", 1958, None, "director,writer,producer"),
    ("Alejandro G. Inarritu", 1963, None, "director,writer,producer"),
    ("Tom Hanks", 1956, None, "actor,producer"),
    ("Kate Winslet", 1975, None, "actress,producer"),
    ("Tom Hardy", 1977, None, "actor,producer"),
    ("Joseph Gordon-Levitt", 1981, None, "actor,producer"),
    ("Elliot Page", 1987, None, "actor,producer"),
    ("Ken Watanabe", 1959, None, "actor"),
    ("Cillian Murphy", 1976, None, "actor,producer"),
    ("Marion Cotillard", 1975, None, "actress"),
    ("Michael Caine", 1933, None, "actor,producer"),
    ("Hans Zimmer", 1957, None, "composer"),
    ("Wally Pfister", 1961, None, "cinematographer,director"),
    ("Emma Thomas", 1971, None, "producer"),
    ("Jonah Hill", 1983, None, "actor,producer,writer"),
    ("Margot Robbie", 1990, None, "actress,producer"),
    ("Matthew McConaughey", 1969, None, "actor,producer"),
    ("Terence Winter", 1960, None, "writer,producer"),
    ("Christopher Walken", 1943, None, "actor"),
    ("Amy Adams", 1974, None, "actress,producer"),
    ("Jeff Nathanson", 1965, None, "writer,producer"),
    ("John Williams", 1932, None, "composer"),
    ("Meryl Streep", 1949, None, "actress,producer"),
    ("Cate Blanchett", 1969, None, "actress,producer"),
    ("Billy Zane", 1966, None, "actor"),
    ("Kathy Bates", 1948, None, "actress,director"),
    ("Gloria Stuart", 1910, 2010, "actress"),
    ("James Horner", 1953, 2015, "composer"),
    ("Anthony Hopkins", 1937, None, "actor,director"),
    ("Helen Mirren", 1945, None, "actress"),
    ("Scarlett Johansson", 1984, None, "actress,producer"),
    ("Jessica Biel", 1982, None, "actress,producer"),
    ("Danny Huston", 1962, None, "actor,director"),
    ("Michael Stuhlbarg", 1968, None, "actor"),
    ("Christian Bale", 1974, None, "actor,producer"),
    ("Anne Hathaway", 1982, None, "actress,producer"),
    ("Liam Neeson", 1952, None, "actor,producer"),
    ("Katie Holmes", 1978, None, "actress,producer"),
    ("Gary Oldman", 1958, None, "actor,producer"),
    ("Josh Hutcherson", 1992, None, "actor,producer"),
    ("Liam Hemsworth", 1990, None, "actor"),
    ("Woody Harrelson", 1961, None, "actor,producer"),
    ("Sam Claflin", 1986, None, "actor,producer"),
    ("Max Thieriot", 1988, None, "actor,director"),
    ("Elisabeth Shue", 1963, None, "actress"),
    ("David Loucka", 1961, None, "writer"),
    ("John J. McLaughlin", 1952, None, "writer"),
    ("Mark Ruffalo", 1967, None, "actor,producer"),
    ("Ben Kingsley", 1943, None, "actor,producer"),
    ("Matt Damon", 1970, None, "actor,producer,writer"),
    ("Jack Nicholson", 1937, None, "actor,producer"),
    ("William Monahan", 1960, None, "writer,producer"),
    ("John Logan", 1961, None, "writer,producer"),
    ("Tobey Maguire", 1975, None, "actor,producer"),
    ("Bradley Cooper", 1975, None, "actor,producer"),
    ("Robert De Niro", 1943, None, "actor,producer"),
    ("Jessica Chastain", 1977, None, "actress,producer"),
    ("Hugh Jackman", 1968, None, "actor,producer"),
    ("J.R.R. Tolkien", 1892, 1973, "writer"),
    ("Antoine de Saint-Exupery", 1900, 1944, "writer"),
    ("J.K. Rowling", 1965, None, "writer,producer"),
    ("George Orwell", 1903, 1950, "writer"),
    ("Jane Austen", 1775, 1817, "writer"),
    ("F. Scott Fitzgerald", 1896, 1940, "writer"),
    ("Suzanne Collins", 1962, None, "writer,producer"),
    ("Charlotte Bronte", 1816, 1855, "writer"),
    ("Harper Lee", 1926, 2016, "writer"),
]

# (title, year, runtime, rating, countries, languages, genres, plot,
#  cast [(name, character)], crew {category: [names]})
CURATED_MOVIES = [
    (
        "Inception", 2010, 148, "8.8", "USA,UK", "English,Japanese,French",
        "Action,Adventure,Sci-Fi",
        "A thief who steals corporate secrets through dream-sharing technology "
        "is given the inverse task of planting an idea into the mind of an heir.",
        [
            ("Leonardo DiCaprio", "Cobb"),
            ("Joseph Gordon-Levitt", "Arthur"),
            ("Elliot Page", "Ariadne"),
            ("Tom Hardy", "Eames"),
            ("Ken Watanabe", "Saito"),
            ("Cillian Murphy", "Robert Fischer"),
            ("Marion Cotillard", "Mal"),
            ("Michael Caine", "Professor Miles"),
        ],
        {
            "director": ["Christopher Nolan"],
            "writer": ["Christopher Nolan"],
            "composer": ["Hans Zimmer"],
            "producer": ["Emma Thomas", "Christopher Nolan"],
            "cinematographer": ["Wally Pfister"],
        },
    ),
    (
        "The Wolf of Wall Street", 2013, 180, "8.2", "USA", "English,French",
        "Biography,Comedy,Crime",
        "Based on the true story of Jordan Belfort, from his rise to a wealthy "
        "stockbroker to his fall involving crime and corruption.",
        [
            ("Leonardo DiCaprio", "Jordan Belfort"),
            ("Jonah Hill", "Donnie Azoff"),
            ("Margot Robbie", "Naomi Lapaglia"),
            ("Matthew McConaughey", "Mark Hanna"),
        ],
        {"director": ["Martin Scorsese"], "writer": ["Terence Winter"]},
    ),
    (
        "Catch Me If You Can", 2002, 141, "8.1", "USA,Canada", "English,French",
        "Biography,Crime,Drama",
        "Barely 21 yet, Frank is a skilled forger who has passed as a doctor, "
        "lawyer and pilot; an FBI agent makes it his mission to put him behind bars.",
        [
            ("Leonardo DiCaprio", "Frank Abagnale Jr."),
            ("Tom Hanks", "Carl Hanratty"),
            ("Christopher Walken", "Frank Abagnale Sr."),
            ("Amy Adams", "Brenda Strong"),
        ],
        {
            "director": ["Steven Spielberg"],
            "writer": ["Jeff Nathanson"],
            "composer": ["John Williams"],
        },
    ),
    (
        "Don't Look Up", 2021, 138, "7.2", "USA", "English", "Comedy,Drama,Sci-Fi",
        "Two low-level astronomers must go on a giant media tour to warn mankind "
        "of an approaching comet that will destroy planet Earth.",
        [
            ("Leonardo DiCaprio", "Dr. Randall Mindy"),
            ("Jennifer Lawrence", "Kate Dibiasky"),
            ("Meryl Streep", "President Janie Orlean"),
            ("Cate Blanchett", "Brie Evantee"),
            ("Jonah Hill", "Jason Orlean"),
        ],
        {"director": ["Adam McKay"], "writer": ["Adam McKay"]},
    ),
    (
        "House at the End of the Street", 2012, 101, "5.6", "USA,Canada", "English",
        "Drama,Horror,Mystery",
        "A mother and daughter move to a new town and find themselves living next "
        "door to a house where a young girl murdered her parents.",
        [
            ("Jennifer Lawrence", "Elissa"),
            ("Max Thieriot", "Ryan"),
            ("Elisabeth Shue", "Sarah"),
        ],
        {"director": ["Mark Tonderai"], "writer": ["David Loucka"]},
    ),
    (
        "Titanic", 1997, 194, "7.9", "USA,Mexico", "English,Swedish", "Drama,Romance",
        "A seventeen-year-old aristocrat falls in love with a kind but poor artist "
        "aboard the luxurious, ill-fated R.M.S. Titanic.",
        [
            ("Leonardo DiCaprio", "Jack Dawson"),
            ("Kate Winslet", "Rose DeWitt Bukater"),
            ("Billy Zane", "Cal Hockley"),
            ("Kathy Bates", "Molly Brown"),
            ("Gloria Stuart", "Old Rose"),
        ],
        {
            "director": ["James Cameron"],
            "writer": ["James Cameron"],
            "composer": ["James Horner"],
        },
    ),
    (
        "Hitchcock", 2012, 98, "6.8", "USA", "English", "Biography,Drama",
        "Behind the scenes of the making of a landmark thriller, and the "
        "partnership that carried it through.",
        [
            ("Anthony Hopkins", "Alfred Hitchcock"),
            ("Helen Mirren", "Alma Reville"),
            ("Scarlett Johansson", "Janet Leigh"),
            ("Jessica Biel", "Vera Miles"),
            ("Danny Huston", "Whitfield Cook"),
            ("Michael Stuhlbarg", "Lew Wasserman"),
            ("Currie Graham", "Flack"),
        ],
        {"director": ["Sacha Gervasi"], "writer": ["John J. McLaughlin"]},
    ),
    (
        "The Dark Knight Rises", 2012, 164, "8.4", "USA,UK", "English",
        "Action,Drama,Thriller",
        "Eight years after the Joker's reign of anarchy, Batman is forced from "
        "his exile with the help of an enigmatic thief to save Gotham City.",
        [
            ("Christian Bale", "Bruce Wayne"),
            ("Tom Hardy", "Bane"),
            ("Anne Hathaway", "Selina Kyle"),
            ("Joseph Gordon-Levitt", "John Blake"),
            ("Marion Cotillard", "Miranda Tate"),
            ("Michael Caine", "Alfred"),
            ("Gary Oldman", "Commissioner Gordon"),
        ],
        {
            "director": ["Christopher Nolan"],
            "writer": ["Christopher Nolan", "Jonathan Nolan"],
            "composer": ["Hans Zimmer"],
            "producer": ["Emma Thomas"],
        },
    ),
    (
        "The Hunger Games: Mockingjay - Part 2", 2015, 137, "6.5", "USA,Germany",
        "English", "Action,Adventure,Sci-Fi",
        "Katniss and a team of rebels from District 13 prepare for the final "
        "battle that will decide the fate of Panem.",
        [
            ("Jennifer Lawrence", "Katniss Everdeen"),
            ("Josh Hutcherson", "Peeta Mellark"),
            ("Liam Hemsworth", "Gale Hawthorne"),
            ("Woody Harrelson", "Haymitch Abernathy"),
            ("Sam Claflin", "Finnick Odair"),
        ],
        {"director": ["Francis Lawrence"], "writer": ["Suzanne Collins"]},
    ),
    (
        "Batman Begins", 2005, 140, "8.2", "USA,UK", "English", "Action,Crime,Drama",
        "After witnessing his parents' death, Bruce trains himself to fight "
        "injustice and returns to Gotham as Batman.",
        [
            ("Christian Bale", "Bruce Wayne"),
            ("Michael Caine", "Alfred"),
            ("Liam Neeson", "Henri Ducard"),
            ("Katie Holmes", "Rachel Dawes"),
            ("Gary Oldman", "Jim Gordon"),
            ("Cillian Murphy", "Dr. Jonathan Crane"),
        ],
        {
            "director": ["Christopher Nolan"],
            "writer": ["Christopher Nolan"],
            "composer": ["Hans Zimmer"],
        },
    ),
    (
        "The Hunger Games", 2012, 142, "7.2", "USA", "English",
        "Action,Adventure,Sci-Fi",
        "Katniss Everdeen voluntarily takes her younger sister's place in a "
        "televised competition in which teenagers fight to the death.",
        [
            ("Jennifer Lawrence", "Katniss Everdeen"),
            ("Josh Hutcherson", "Peeta Mellark"),
            ("Liam Hemsworth", "Gale Hawthorne"),
            ("Woody Harrelson", "Haymitch Abernathy"),
        ],
        {"director": ["Gary Ross"], "writer": ["Suzanne Collins"]},
    ),
    (
        "Shutter Island", 2010, 138, "8.2", "USA", "English,German",
        "Mystery,Thriller",
        "Two U.S. Marshals investigate the disappearance of a patient from a "
        "hospital for the criminally insane on a remote island.",
        [
            ("Leonardo DiCaprio", "Teddy Daniels"),
            ("Mark Ruffalo", "Chuck Aule"),
            ("Ben Kingsley", "Dr. Cawley"),
        ],
        {"director": ["Martin Scorsese"]},
    ),
    (
        "The Revenant", 2015, 156, "8.0", "USA", "English,French",
        "Action,Adventure,Drama",
        "A frontiersman on a fur trading expedition fights for survival after "
        "being mauled by a bear and left for dead by his own hunting team.",
        [
            ("Leonardo DiCaprio", "Hugh Glass"),
            ("Tom Hardy", "John Fitzgerald"),
        ],
        {"director": ["Alejandro G. Inarritu"], "writer": ["Alejandro G. Inarritu"]},
    ),
    (
        "The Departed", 2006, 151, "8.5", "USA,Hong Kong", "English,Cantonese",
        "Crime,Drama,Thriller",
        "An undercover cop and a mole in the police attempt to identify each "
        "other while infiltrating an Irish gang in Boston.",
        [
            ("Leonardo DiCaprio", "Billy Costigan"),
            ("Matt Damon", "Colin Sullivan"),
            ("Jack Nicholson", "Frank Costello"),
        ],
        {"director": ["Martin Scorsese"], "writer": ["William Monahan"]},
    ),
    (
        "The Prestige", 2006, 130, "8.5", "USA,UK", "English",
        "Drama,Mystery,Thriller",
        "After a tragic accident, two stage magicians in London engage in a "
        "battle to create the ultimate illusion.",
        [
            ("Christian Bale", "Alfred Borden"),
            ("Hugh Jackman", "Robert Angier"),
            ("Scarlett Johansson", "Olivia Wenscombe"),
            ("Michael Caine", "Cutter"),
        ],
        {"director": ["Christopher Nolan"], "writer": ["Christopher Nolan", "Jonathan Nolan"]},
    ),
    (
        "The Aviator", 2004, 170, "7.5", "USA,Germany", "English", "Biography,Drama",
        "The life of aviation pioneer and film tycoon Howard Hughes, from the "
        "late 1920s to the mid 1940s.",
        [
            ("Leonardo DiCaprio", "Howard Hughes"),
            ("Cate Blanchett", "Katharine Hepburn"),
        ],
        {"director": ["Martin Scorsese"], "writer": ["John Logan"]},
    ),
    (
        "The Great Gatsby", 2013, 143, "7.2", "Australia,USA", "English",
        "Drama,Romance",
        "A writer and wall street trader finds himself drawn to the past and "
        "lifestyle of his millionaire neighbor.",
        [
            ("Leonardo DiCaprio", "Jay Gatsby"),
            ("Tobey Maguire", "Nick Carraway"),
        ],
        {"director": ["Baz Luhrmann"], "writer": ["Baz Luhrmann"]},
    ),
    (
        "Silver Linings Playbook", 2012, 122, "7.7", "USA", "English",
        "Comedy,Drama,Romance",
        "After a stint in a mental institution, Pat moves back in with his "
        "parents and meets a mysterious girl with problems of her own.",
        [
            ("Bradley Cooper", "Pat Solitano"),
            ("Jennifer Lawrence", "Tiffany Maxwell"),
            ("Robert De Niro", "Pat Sr."),
        ],
        {"director": ["David O. Russell"], "writer": ["David O. Russell"]},
    ),
    (
        "Interstellar", 2014, 169, "8.7", "USA,UK", "English",
        "Adventure,Drama,Sci-Fi",
        "When Earth becomes uninhabitable, a farmer and ex-pilot is tasked to "
        "pilot a spacecraft to find a new planet for humans.",
        [
            ("Matthew McConaughey", "Cooper"),
            ("Anne Hathaway", "Brand"),
            ("Jessica Chastain", "Murph"),
            ("Michael Caine", "Professor Brand"),
        ],
        {
            "director": ["Christopher Nolan"],
            "writer": ["Jonathan Nolan", "Christopher Nolan"],
            "composer": ["Hans Zimmer"],
        },
    ),
]

# (title, series, author, rating, language, genres, awards, settings, characters, plot)
CURATED_BOOKS = [
    (
        "The Little Prince", None, "Antoine de Saint-Exupery", "8.6", "French",
        "Fantasy,Children,Classics", "", "Sahara Desert,Asteroid B-612",
        "The Little Prince,The Pilot,The Fox,The Rose",
        "A pilot stranded in the desert meets a young prince who recounts his "
        "journey among the planets and what he learned about love and loss.",
    ),
    (
        "The Lord of the Rings", "The Lord of the Rings", "J.R.R. Tolkien", "9.0",
        "English", "Fantasy,Adventure,Classics", "International Fantasy Award",
        "Middle-earth", "Frodo Baggins,Gandalf,Aragorn,Samwise Gamgee",
        "A hobbit inherits a ring of terrible power and sets out on a quest to "
        "destroy it in the fires where it was forged.",
    ),
    (
        "The Hobbit", None, "J.R.R. Tolkien", "8.6", "English",
        "Fantasy,Adventure,Children", "", "Middle-earth",
        "Bilbo Baggins,Gandalf,Thorin Oakenshield",
        "A comfortable hobbit is swept into a company of dwarves on a journey "
        "to reclaim their mountain home from a dragon.",
    ),
    (
        "Harry Potter and the Philosopher's Stone", "Harry Potter", "J.K. Rowling",
        "8.9", "English", "Fantasy,Children,Adventure", "", "Hogwarts",
        "Harry Potter,Hermione Granger,Ron Weasley",
        "An orphaned boy discovers on his eleventh birthday that he is a wizard "
        "and begins his first year at a school of magic.",
    ),
    (
        "1984", None, "George Orwell", "8.7", "English", "Dystopia,Sci-Fi,Classics",
        "", "Airstrip One", "Winston Smith,Julia,O'Brien",
        "A low-ranking party member rebels against a regime of total "
        "surveillance and discovers the price of thought.",
    ),
    (
        "Animal Farm", None, "George Orwell", "8.2", "English",
        "Dystopia,Classics,Satire", "", "Manor Farm", "Napoleon,Snowball,Boxer",
        "The animals of a farm overthrow their farmer and attempt to build an "
        "equal society, which slides into a new tyranny.",
    ),
    (
        "Pride and Prejudice", None, "Jane Austen", "8.8", "English",
        "Romance,Classics", "", "Hertfordshire", "Elizabeth Bennet,Mr. Darcy",
        "A spirited young woman and a proud gentleman misjudge each other "
        "before understanding what they truly feel.",
    ),
    (
        "The Great Gatsby", None, "F. Scott Fitzgerald", "8.0", "English",
        "Classics,Romance", "", "West Egg", "Jay Gatsby,Nick Carraway,Daisy Buchanan",
        "A mysterious millionaire throws lavish parties in pursuit of a love he "
        "lost five years before.",
    ),
    (
        "The Hunger Games", "The Hunger Games", "Suzanne Collins", "8.5", "English",
        "Dystopia,Sci-Fi,Adventure", "", "Panem", "Katniss Everdeen,Peeta Mellark",
        "A girl from the poorest district volunteers for a televised fight to "
        "the death to save her sister.",
    ),
    (
        "Catching Fire", "The Hunger Games", "Suzanne Collins", "8.3", "English",
        "Dystopia,Sci-Fi,Adventure", "", "Panem", "Katniss Everdeen,Finnick Odair",
        "The victors of the games are forced back into the arena as rebellion "
        "spreads through the districts.",
    ),
    (
        "Jane Eyre", None, "Charlotte Bronte", "8.4", "English",
        "Romance,Classics,Gothic", "", "Thornfield Hall", "Jane Eyre,Mr. Rochester",
        "An orphaned governess falls in love with her employer, a man with a "
        "terrible secret in his attic.",
    ),
    (
        "To Kill a Mockingbird", None, "Harper Lee", "8.9", "English",
        "Classics,Drama", "Pulitzer Prize", "Maycomb",
        "Scout Finch,Atticus Finch,Boo Radley",
        "A young girl watches her father, a small-town lawyer, defend an "
        "innocent man in a town poisoned by prejudice.",
    ),
]

# rank, title, rating, genres, languages, countries, writers, actors, directors
CURATED_CATALOG_MOVIES = [
    (1, "Dune Part Two", "8.3", "Sci-Fi,Adventure", "English", "USA",
     "Denis Villeneuve,Jon Spaihts", "Timothee Chalamet,Zendaya", "Denis Villeneuve"),
    (2, "Killers of the Flower Moon", "7.7", "Crime,Drama,Western", "English", "USA",
     "Eric Roth,Martin Scorsese", "Leonardo DiCaprio,Robert De Niro,Lily Gladstone",
     "Martin Scorsese"),
    (3, "The Starlight Express", "7.1", "Romance,Drama", "French", "France",
     "Claire Fontaine", "Adele Marchand,Hugo Laurent", "Claire Fontaine"),
    (4, "Iron Meadow", "6.9", "Action,Thriller", "English", "UK",
     "Rhys Callow", "Imogen Hart,Dexter Boyle", "Nadia Okafor"),
    (5, "Paper Lanterns", "7.4", "Animation,Family", "Japanese", "Japan",
     "Aiko Tanabe", "Sora Kitamura,Yuki Ando", "Aiko Tanabe"),
]

CURATED_CATALOG_BOOKS = [
    (1, "Fourth Wing", "8.2", "Fantasy,Romance", "English", "USA",
     "Rebecca Yarros", "", ""),
    (2, "The Midnight Library", "7.9", "Fantasy,Drama", "English", "UK",
     "Matt Haig", "", ""),
    (3, "Atlas of Unknown Rivers", "7.5", "Adventure,Travel", "English", "Canada",
     "Mirella Voss", "", ""),
    (4, "The Glass Orchard", "7.2", "Mystery,Thriller", "English", "USA",
     "Theo Grantham", "", ""),
]

CURATED_EXTRA_RULES = [
    ("Titanic", "The Dark Knight Rises", "movie", "plot episode",
     "it has a similar plot episode: Batman sacrifices himself to save Gotham "
     "City, taking the blame for Harvey Dent's crimes and going into hiding"),
    ("Titanic", "The Hunger Games: Mockingjay - Part 2", "movie", "plot episode",
     "it has a similar plot episode: Finnick sacrifices himself to allow "
     "Katniss and others to escape from mutts during the assault on the Capitol"),
]

_FIRST_NAMES = [
    "Ada", "Alan", "Amara", "Amos", "Anya", "Arlo", "Asha", "August", "Beatrix",
    "Bennett", "Birdie", "Bram", "Calla", "Caspian", "Cecily", "Cyrus", "Dahlia",
    "Dashiell", "Delphine", "Dmitri", "Edie", "Elio", "Elowen", "Emrys", "Esme",
    "Ezra", "Farrah", "Fenwick", "Fiora", "Flynn", "Greta", "Gideon", "Halcyon",
    "Hattie", "Hollis", "Idris", "Imogen", "Ines", "Jareth", "Jolene", "Jory",
    "Juniper", "Kael", "Katya", "Keziah", "Lachlan", "Leona", "Lior", "Lucinda",
    "Magnus", "Maren", "Marisol", "Milo", "Mireille", "Nadia", "Nakoa", "Nell",
    "Niamh", "Odette", "Olamide", "Orin", "Paloma", "Percy", "Petra", "Quill",
    "Ramona", "Rashid", "Renata", "Rhys", "Saoirse", "Sable", "Sefton", "Selene",
    "Soren", "Tamsin", "Teodoro", "Thea", "Tobias", "Uma", "Valentin", "Vera",
    "Wendell", "Willa", "Xanthe", "Yara", "Yusuf", "Zadie", "Zeno", "Zora",
]

_LAST_NAMES = [
    "Abernathy", "Ainsworth", "Alcott", "Applegate", "Ashford", "Atwater",
    "Baxendale", "Beaumont", "Bellweather", "Blackwood", "Bramble", "Briarcliff",
    "Calloway", "Carmody", "Cavendish", "Chamberlin", "Coldwell", "Crane",
    "Daventry", "Delacroix", "Dunmore", "Eastvale", "Ellery", "Everhart",
    "Fairbanks", "Fenwick", "Fitzroy", "Gallowglass", "Gearhart", "Goldspur",
    "Hargrove", "Hartwell", "Hawthorne", "Heatherton", "Holloway", "Huxley",
    "Ingles", "Ironwood", "Jessop", "Kentwell", "Kingsolver", "Lanchester",
    "Larkspur", "Leighton", "Lockridge", "Mabry", "Marchbanks", "Merriweather",
    "Montclair", "Mossgrove", "Nethercott", "Nightingale", "Northgate",
    "Oakhurst", "Ostler", "Pemberton", "Penhaligon", "Quimby", "Radcliffe",
    "Ravenshaw", "Redfern", "Rosewater", "Rutherford", "Sablewood", "Seabright",
    "Silvershore", "Sommerfield", "Stonebridge", "Swiftwater", "Tanridge",
    "Thistlewood", "Underhill", "Vancroft", "Verity", "Wakefield", "Westerly",
    "Whitlock", "Winterbourne", "Wolcott", "Yardley",
]

_TITLE_ADJ = [
    "Silent", "Crimson", "Forgotten", "Electric", "Hollow", "Gilded", "Savage",
    "Winter", "Midnight", "Broken", "Luminous", "Restless", "Velvet", "Iron",
    "Paper", "Wandering", "Solemn", "Radiant", "Feral", "Quiet", "Burning",
    "Frozen", "Salt", "Amber", "Obsidian", "Weeping", "Drifting", "Golden",
]

_TITLE_NOUN = [
    "Harbor", "Orchard", "Meridian", "Lantern", "Compass", "Vigil", "Tide",
    "Parallel", "Summit", "Ledger", "Mirror", "Crossing", "Garden", "Signal",
    "Archive", "Horizon", "Carousel", "Furnace", "Meadow", "Causeway", "Anthem",
    "Labyrinth", "Station", "Harvest", "Cartographer", "Aviary", "Sonata",
]

_TITLE_PLACE = [
    "Aldermoor", "Briarwick", "Calderon", "Dunhaven", "Eastmere", "Farrowfield",
    "Glasswater", "Hartsholm", "Inverlock", "Juniper Bay", "Kestrel Point",
    "Larchmont", "Mirefold", "Northwind", "Ottershaw", "Pellbrook", "Quarrystone",
    "Ravensmoor", "Saltmarsh", "Thornbury", "Umberfall", "Vexley", "Wrenhollow",
]

_MOVIE_GENRES = [
    "Action", "Adventure", "Animation", "Biography", "Comedy", "Crime", "Drama",
    "Family", "Fantasy", "History", "Horror", "Music", "Mystery", "Romance",
    "Sci-Fi", "Sport", "Thriller", "War", "Western",
]

_BOOK_GENRES = [
    "Fantasy", "Romance", "Mystery", "Thriller", "Sci-Fi", "Classics", "Drama",
    "Adventure", "Children", "Dystopia", "Gothic", "Satire", "History", "Biography",
]

_COUNTRIES = ["USA", "UK", "France", "Germany", "Japan", "Canada", "Italy",
              "Spain", "South Korea", "Australia", "India", "Mexico"]

_LANGUAGES = ["English", "French", "German", "Japanese", "Italian", "Spanish",
              "Korean", "Hindi", "Mandarin", "Portuguese"]

_AWARDS = ["National Book Prize", "Golden Quill Award", "Readers Choice Medal",
           "Lakeshore Fiction Prize"]

_PLOT_ROLES = ["cartographer", "lighthouse keeper", "retired detective",
               "violinist", "sea captain", "archivist", "botanist", "smuggler",
               "schoolteacher", "apprentice clockmaker", "war correspondent"]

_PLOT_GOALS = ["clear an innocent name", "find a vanished sibling",
               "deliver a final letter", "outrun an old debt",
               "protect a buried secret", "win back a lost home",
               "finish an unfinished symphony", "map an uncharted coast",
               "expose a quiet conspiracy", "keep a promise made in war"]


def _tsv_line(cols) -> str:
    return "\t".join(str(c) if c not in (None, "") else NULL for c in cols)


class _NamePool:
    """Deterministic unique name generator."""

    def __init__(self, rng: random.Random, taken: set[str]):
        self.rng = rng
        self.taken = set(taken)

    def person(self) -> str:
        while True:
            name = f"{self.rng.choice(_FIRST_NAMES)} {self.rng.choice(_LAST_NAMES)}"
            key = name.casefold()
            if key not in self.taken:
                self.taken.add(key)
                return name
            candidate = f"{name} {self.rng.choice(_LAST_NAMES)}"
            if candidate.casefold() not in self.taken:
                self.taken.add(candidate.casefold())
                return candidate

    def title(self) -> str:
        patterns = [
            lambda: f"The {self.rng.choice(_TITLE_ADJ)} {self.rng.choice(_TITLE_NOUN)}",
            lambda: f"{self.rng.choice(_TITLE_NOUN)} of {self.rng.choice(_TITLE_PLACE)}",
            lambda: f"{self.rng.choice(_TITLE_ADJ)} {self.rng.choice(_TITLE_NOUN)}",
            lambda: f"A {self.rng.choice(_TITLE_NOUN)} in {self.rng.choice(_TITLE_PLACE)}",
        ]
        for _ in range(1000):
            name = self.rng.choice(patterns)()
            if name.casefold() not in self.taken:
                self.taken.add(name.casefold())
                return name
        n = 2
        while True:
            name = f"The {self.rng.choice(_TITLE_ADJ)} {self.rng.choice(_TITLE_NOUN)} {n}"
            if name.casefold() not in self.taken:
                self.taken.add(name.casefold())
                return name
            n += 1


def generate_kb(
    out_dir,
    movies: int = FULL_MOVIES,
    books: int = FULL_BOOKS,
    people: int = FULL_PEOPLE,
    seed: int = 2024,
) -> dict[str, int]:
    """Write a complete KB directory; returns the record counts."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    if movies < len(CURATED_MOVIES) or books < len(CURATED_BOOKS) or people < len(CURATED_PEOPLE):
        raise ValueError("requested sizes are smaller than the curated core")

    person_ids: dict[str, str] = {}
    person_rows: list[list] = []  # [id, name, birth, death, professions, rep_work]
    for i, (name, birth, death, professions) in enumerate(CURATED_PEOPLE, start=1):
        pid = f"nm{9000000 + i}"
        person_ids[name] = pid
        person_rows.append([pid, name, birth, death, professions, ""])

    pool = _NamePool(rng, {name.casefold() for name in person_ids})
    filler_people = people - len(CURATED_PEOPLE)
    filler_ids: list[str] = []
    for i in range(filler_people):
        pid = f"nm{1000000 + i}"
        name = pool.person()
        professions = rng.choice(
            ["actor", "actress", "actor,producer", "actress,producer", "director",
             "writer", "director,writer", "composer", "producer", "editor",
             "cinematographer", "actor,writer", "actress,director"]
        )
        birth = rng.randint(1920, 2000)
        death = None
        if birth < 1950 and rng.random() < 0.5:
            death = birth + rng.randint(40, 90)
        person_ids[name] = pid
        filler_ids.append(pid)
        person_rows.append([pid, name, birth, death, professions, ""])

    def pick_filler(profession: str, k: int) -> list[str]:
        chosen = []
        for _ in range(k):
            for _attempt in range(50):
                pid = rng.choice(filler_ids)
                row = person_rows[id_index[pid]]
                if profession in row[4] and pid not in chosen:
                    chosen.append(pid)
                    break
        return chosen

    id_index = {row[0]: i for i, row in enumerate(person_rows)}

    movie_rows: list[list] = []
    link_rows: list[list] = []
    title_pool = _NamePool(rng, {t[0].casefold() for t in CURATED_MOVIES})

    def add_links(movie_id: str, cast: list[tuple[str, str]], crew: dict):
        for order, (pid, character) in enumerate(cast, start=1):
            category = "actress" if "actress" in person_rows[id_index[pid]][4] else "actor"
            link_rows.append([movie_id, order, pid, category, character or ""])
        for category, pids in crew.items():
            for order, pid in enumerate(pids, start=1):
                link_rows.append([movie_id, order, pid, category, ""])

    for i, (title, year, runtime, rating, countries, languages, genres, plot,
            cast, crew) in enumerate(CURATED_MOVIES, start=1):
        movie_id = f"tt{9000000 + i}"
        movie_rows.append([movie_id, title, year, runtime, rating, countries,
                           languages, genres, plot])
        add_links(
            movie_id,
            [(person_ids[name], character) for name, character in cast],
            {cat: [person_ids[n] for n in names] for cat, names in crew.items()},
        )

    for i in range(movies - len(CURATED_MOVIES)):
        movie_id = f"tt{1000000 + i}"
        title = title_pool.title()
        year = rng.randint(1950, 2023)
        runtime = rng.randint(80, 185)
        rating = f"{rng.uniform(4.0, 9.2):.1f}"
        countries = ",".join(rng.sample(_COUNTRIES, rng.randint(1, 2)))
        languages = ",".join(rng.sample(_LANGUAGES, rng.randint(1, 2)))
        genres = ",".join(rng.sample(_MOVIE_GENRES, rng.randint(1, 3)))
        plot = (f"A {rng.choice(_PLOT_ROLES)} must {rng.choice(_PLOT_GOALS)} "
                f"in {rng.choice(_TITLE_PLACE)}.")
        movie_rows.append([movie_id, title, year, runtime, rating, countries,
                           languages, genres, plot])
        cast_ids = []
        for pid in (rng.choice(filler_ids) for _ in range(rng.randint(4, 8))):
            profs = person_rows[id_index[pid]][4]
            if ("actor" in profs or "actress" in profs) and pid not in cast_ids:
                cast_ids.append(pid)
        cast = [(pid, rng.choice(_FIRST_NAMES)) for pid in cast_ids]
        crew: dict[str, list[str]] = {"director": pick_filler("director", 1)}
        crew["writer"] = pick_filler("writer", rng.randint(1, 2))
        if rng.random() < 0.5:
            crew["composer"] = pick_filler("composer", 1)
        if rng.random() < 0.4:
            crew["producer"] = pick_filler("producer", 1)
        if rng.random() < 0.25:
            crew["cinematographer"] = pick_filler("cinematographer", 1)
        crew = {cat: pids for cat, pids in crew.items() if pids}
        add_links(movie_id, cast, crew)

    book_lines: list[str] = []
    book_title_pool = _NamePool(
        rng,
        {t[0].casefold() for t in CURATED_BOOKS} | {r[1].casefold() for r in movie_rows},
    )
    for (title, series, author, rating, language, genres, awards, settings,
         characters, plot) in CURATED_BOOKS:
        book_lines.append(
            f"title={title}|series={series or ''}|author={person_ids[author]}"
            f"|rating={rating}|language={language}|genres={genres}"
            f"|awards={awards}|settings={settings}|characters={characters}"
            f"|plot={plot}"
        )
    writer_ids = [pid for pid in filler_ids if "writer" in person_rows[id_index[pid]][4]]
    for _ in range(books - len(CURATED_BOOKS)):
        title = book_title_pool.title()
        if rng.random() < 0.6:
            author = rng.choice(writer_ids)
        else:
            author = f"{rng.choice(_FIRST_NAMES)} {rng.choice(_TITLE_ADJ)}wood"
        series = f"The {rng.choice(_TITLE_NOUN)} Cycle" if rng.random() < 0.2 else ""
        rating = f"{rng.uniform(3.5, 9.5):.1f}"
        language = rng.choice(_LANGUAGES)
        genres = ",".join(rng.sample(_BOOK_GENRES, rng.randint(1, 3)))
        awards = ",".join(rng.sample(_AWARDS, rng.randint(0, 2)))
        settings = ",".join(rng.sample(_TITLE_PLACE, rng.randint(0, 2)))
        characters = ",".join(
            f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}"
            for _ in range(rng.randint(2, 4))
        )
        plot = (f"A {rng.choice(_PLOT_ROLES)} sets out to "
                f"{rng.choice(_PLOT_GOALS)} in {rng.choice(_TITLE_PLACE)}.")
        book_lines.append(
            f"title={title}|series={series}|author={author}|rating={rating}"
            f"|language={language}|genres={genres}|awards={awards}"
            f"|settings={settings}|characters={characters}|plot={plot}"
        )

    # representative work: up to two credited titles per person
    credited: dict[str, list[str]] = {}
    titles_by_movie_id = {row[0]: row[1] for row in movie_rows}
    for movie_id, _order, pid, _category, _character in link_rows:
        titles = credited.setdefault(pid, [])
        title = titles_by_movie_id[movie_id]
        if title not in titles:
            titles.append(title)
    for row in person_rows:
        row[5] = ",".join(credited.get(row[0], [])[:2])

    (out / "movies.tsv").write_text(
        "\n".join(["\t".join(MOVIE_HEADER)] + [_tsv_line(r) for r in movie_rows]) + "\n",
        encoding="utf-8",
    )
    (out / "people.tsv").write_text(
        "\n".join(["\t".join(PEOPLE_HEADER)] + [_tsv_line(r) for r in person_rows]) + "\n",
        encoding="utf-8",
    )
    (out / "links.tsv").write_text(
        "\n".join(["\t".join(LINKS_HEADER)] + [_tsv_line(r) for r in link_rows]) + "\n",
        encoding="utf-8",
    )
    (out / "books.dat").write_text(
        "\n".join([BOOKS_MAGIC] + book_lines) + "\n", encoding="utf-8"
    )

    catalog_movie_lines = [
        f"rank={rank}|title={title}|rating={rating}|genres={genres}"
        f"|languages={langs}|countries={countries}|writers={writers}"
        f"|actors={actors}|directors={directors}"
        for rank, title, rating, genres, langs, countries, writers, actors, directors
        in CURATED_CATALOG_MOVIES
    ]
    (out / "catalog_movies.dat").write_text(
        "\n".join([CATALOG_MOVIES_MAGIC] + catalog_movie_lines) + "\n", encoding="utf-8"
    )
    catalog_book_lines = [
        f"rank={rank}|title={title}|rating={rating}|genres={genres}"
        f"|languages={langs}|countries={countries}|writers={writers}"
        f"|actors={actors}|directors={directors}"
        for rank, title, rating, genres, langs, countries, writers, actors, directors
        in CURATED_CATALOG_BOOKS
    ]
    (out / "catalog_books.dat").write_text(
        "\n".join([CATALOG_BOOKS_MAGIC] + catalog_book_lines) + "\n", encoding="utf-8"
    )
    rule_lines = [
        f"source={source}|target={target}|topic={topic}|property={prop}|relation={relation}"
        for source, target, topic, prop, relation in CURATED_EXTRA_RULES
    ]
    (out / "extra_rules.dat").write_text(
        "\n".join([EXTRA_RULES_MAGIC] + rule_lines) + "\n", encoding="utf-8"
    )
    return {"movies": len(movie_rows), "books": len(book_lines), "people": len(person_rows)}


def generate_small_kb(out_dir, seed: int = 2024) -> dict[str, int]:
    """Curated core only; the fast fixture for tests and demos."""
    return generate_kb(
        out_dir,
        movies=len(CURATED_MOVIES),
        books=len(CURATED_BOOKS),
        people=len(CURATED_PEOPLE),
        seed=seed,
    )
