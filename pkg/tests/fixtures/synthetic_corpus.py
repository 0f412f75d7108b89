"""
Synthetic 40-film corpus with hand-computed expectations.

Tags come in six pairs that are always applied together, so every pair is
one tag group. Film types:

    core noirs 1-8, 40      noir + crime + dark      reference films
    noirs 9, 10             noir + space             noise (far from center)
    noir 11                 crime                    noise (far, too few tags)
    12-15, 35               noir + crime + dark      accepted
    16-19                   dark                     too few tags
    20-22                   crime + dark + comedy    ratio exceeded
    23-28, 32               comedy + family + space  no shared group
    29 (tvEpisode), 30 (short), 31 (documentary)     removed by the narrative filter
    37 ("boring", one user), 38 ("oscar")            dropped with their tags
    39                                               no tags

MovieLens 33 duplicates film 1's IMDb id, 34 points at an id missing from
basics, 35 carries a stale id remapped by the override table and 36 an
excluded one.
"""

import csv
from pathlib import Path
from typing import Dict, List, Tuple

TAG_PAIRS = {
    'noir': ('noir', 'film noir'),
    'crime': ('murder', 'revenge'),
    'dark': ('dark', 'atmospheric'),
    'comedy': ('funny', 'comedy'),
    'family': ('family', 'kids'),
    'space': ('space', 'aliens'),
}

CORE = [1, 2, 3, 4, 5, 6, 7, 8, 40]
ACCEPTED = [12, 13, 14, 15, 35]
FILM_GROUPS: Dict[int, Tuple[str, ...]] = {}
for _film in CORE + ACCEPTED + [31]:
    FILM_GROUPS[_film] = ('noir', 'crime', 'dark')
for _film in (9, 10):
    FILM_GROUPS[_film] = ('noir', 'space')
FILM_GROUPS[11] = ('crime',)
for _film in (16, 17, 18, 19, 30):
    FILM_GROUPS[_film] = ('dark',)
for _film in (20, 21, 22):
    FILM_GROUPS[_film] = ('crime', 'dark', 'comedy')
for _film in (23, 24, 25, 26, 27, 28, 32, 29):
    FILM_GROUPS[_film] = ('comedy', 'family', 'space')

# (user, movieId, tag) beyond the paired tags
EXTRA_APPLICATIONS: List[Tuple[int, int, str]] = (
    [(f % 3 + 1, f, 'Film-Noir') for f in (1, 2, 3)]
    + [(f % 3 + 1, f, 'Murders') for f in (1, 2)]
    + [(7, f, 'boring') for f in (37, 23, 24)]
    + [(4, 1, 'oscar'), (5, 2, 'oscar'), (6, 3, 'oscar'), (4, 38, 'oscar')]
    + [(4, 40, 'humphrey bogart'), (5, 4, 'humphrey bogart'), (6, 5, 'humphrey bogart')]
    + [(4, 20, 'heist'), (5, 20, 'heist'), (6, 20, 'heist')]
    + [(2, 33, 'dark'), (1, 34, 'noir'), (1, 36, 'noir')]
)

YEARS = {film: 1940 + film for film in range(1, 9)}
YEARS.update({40: 1950, 9: 1949, 10: 1950, 11: 1951, 12: 1955, 13: 1958, 14: 1974, 15: 1981})

TITLE_TYPES = {29: 'tvEpisode', 30: 'short', 32: 'tvMovie'}

NOIR_GENRES = 'Crime,Film-Noir'

# Hand-computed expectations for min_users = min_films = 2, min_tags = 5
EXPECTED = {
    'films_loaded': 37,
    'films_retained': 34,
    'duplicates_merged': 1,
    'overrides_applied': 1,
    'exclusions': 1,
    'missing_from_basics': 1,
    'applications_unknown_film': 2,
    'malformed_tags': 1,
    'stems_seen': 16,
    'stems_before_stoplists': 14,
    'tags': 12,
    'films': 31,
    'components': 6,
    'groups': 6,
    'edges': 12,
    'film_frequency': {'noir': 16, 'murder': 18, 'dark': 21, 'funny': 10, 'family': 7, 'space': 9},
    'training': 12,
    'non_noise': 9,
    'noise': 3,
    'unlabeled': 19,
    'unlabeled_with_min_tags': 15,
    'accepted': 5,
    'rejections': {'too_few_tags': 4, 'ratio_exceeded': 3, 'max_distance': 7,
                   'zero_vector': 0, 'distance_exceeded': 0},
    'early_films': 11,
    'late_films': 2,
    'unknown_year_films': 1,
}


def imdb_id(number: int) -> str:
    return f"tt{100000 + number:07d}"


def item_id_of(film: int) -> int:
    """Dense item id of a film number after loading (imdb id order)"""
    order = [n for n in range(1, 33)] + [35, 37, 38, 39, 40]
    return order.index(film)


def _links() -> List[List[str]]:
    rows = []
    for movie_id in range(1, 41):
        digits = f"{100000 + movie_id:07d}"
        if movie_id == 33:
            digits = f"{100001:07d}"
        elif movie_id == 34:
            digits = f"{199999:07d}"
        elif movie_id == 35:
            digits = f"{100099:07d}"
        elif movie_id == 36:
            digits = f"{100098:07d}"
        rows.append([str(movie_id), digits, str(5000 + movie_id)])
    return rows


def _basics() -> List[List[str]]:
    rows = []
    for film in range(1, 41):
        if film in (33, 34, 36):
            continue
        if film in CORE or film in (9, 10, 11):
            genres = NOIR_GENRES
        elif film == 31:
            genres = 'Crime,Documentary'
        elif film in ACCEPTED:
            genres = 'Crime,Drama'
        else:
            genres = 'Comedy'
        year = str(YEARS.get(film, 1990)) if film != 35 else '\\N'
        rows.append([imdb_id(film), TITLE_TYPES.get(film, 'movie'), f"Film {film}", f"Film {film}",
                     '0', year, '\\N', '90', genres])
    return rows


def _tag_rows() -> List[List[str]]:
    rows = []
    timestamp = 1500000000
    for film in sorted(FILM_GROUPS):
        user = film % 3 + 1
        for group in FILM_GROUPS[film]:
            for tag in TAG_PAIRS[group]:
                timestamp += 1
                rows.append([str(user), str(film), tag, str(timestamp)])
    for user, movie_id, tag in EXTRA_APPLICATIONS:
        timestamp += 1
        rows.append([str(user), str(movie_id), tag, str(timestamp)])
    return rows


def write_synthetic_corpus(directory: Path) -> Dict[str, Path]:
    """
    Write every input file of the synthetic corpus

    Returns:
        Paths keyed by RunConfig field name
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        'links_path': directory / 'links.csv',
        'tags_path': directory / 'tags.csv',
        'basics_path': directory / 'title.basics.tsv',
        'overrides_path': directory / 'id_overrides.csv',
        'stem_overrides_path': directory / 'stem_overrides.csv',
        'person_stoplist_path': directory / 'person_names.txt',
        'noinfo_stoplist_path': directory / 'no_information.txt',
    }

    with open(paths['links_path'], 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['movieId', 'imdbId', 'tmdbId'])
        writer.writerows(_links())

    with open(paths['tags_path'], 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['userId', 'movieId', 'tag', 'timestamp'])
        writer.writerows(_tag_rows())
        writer.writerow(['1', '1', 'noir', 'not-a-timestamp'])

    with open(paths['basics_path'], 'w', encoding='utf-8', newline='') as f:
        f.write('\t'.join(['tconst', 'titleType', 'primaryTitle', 'originalTitle', 'isAdult',
                           'startYear', 'endYear', 'runtimeMinutes', 'genres']) + '\n')
        for row in _basics():
            f.write('\t'.join(row) + '\n')

    paths['overrides_path'].write_text(
        'stale_imdb_id,new_imdb_id\ntt0100099,tt0100035\ntt0100098,\n', encoding='utf-8')
    paths['stem_overrides_path'].write_text('canonical,stem\nheroine,heroine\n', encoding='utf-8')
    paths['person_stoplist_path'].write_text('# people\nHumphrey Bogart\n', encoding='utf-8')
    paths['noinfo_stoplist_path'].write_text('Oscar\nin netflix queue  # example\n', encoding='utf-8')
    return paths


def synthetic_settings(directory: Path, output_dir: Path, **overrides) -> Dict:
    """RunConfig keys for the synthetic corpus with the small-corpus thresholds"""
    settings = {key: str(path) for key, path in write_synthetic_corpus(directory).items()}
    settings.update({
        'output_dir': str(output_dir),
        'min_users': 2,
        'min_films': 2,
        'min_tags': 5,
        'thresholds': '1.26,0.43,0.43,0.43',
        'seed': 11,
    })
    settings.update(overrides)
    return settings
