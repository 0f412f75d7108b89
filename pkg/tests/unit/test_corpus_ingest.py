"""Unit tests for the readers, the override table and the corpus loader"""

import pytest

from packages.corpus_ingest import (
    BasicsReader,
    CorpusLoader,
    FilmRecord,
    IdOverrideTable,
    IngestReport,
    LinksReader,
    TagsReader,
    TitleType,
    filter_narrative,
    load_corpus,
    retain_applications,
)
from packages.corpus_ingest.records import TagApplication
from packages.utils.error_handling import ConfigError, DataError
from tests.fixtures.synthetic_corpus import EXPECTED, imdb_id, item_id_of


def write(path, text):
    path.write_text(text, encoding='utf-8')
    return path


class TestReaders:
    def test_links_prefix_and_padding(self, tmp_path):
        path = write(tmp_path / 'links.csv', "movieId,imdbId,tmdbId\n1,0114709,862\n2,0113497,\n")
        rows = LinksReader(path).read()
        assert [(r.movielens_id, r.imdb_id) for r in rows] == [(1, 'tt0114709'), (2, 'tt0113497')]

    def test_missing_column(self, tmp_path):
        path = write(tmp_path / 'links.csv', "movieId,tmdbId\n1,862\n")
        with pytest.raises(DataError, match="imdbId"):
            LinksReader(path).read()

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="file not found"):
            LinksReader(tmp_path / 'absent.csv').read()

    def test_tags_keep_quoted_commas_and_case(self, tmp_path):
        path = write(tmp_path / 'tags.csv',
                     'userId,movieId,tag,timestamp\n3,1,"Dark, Moody",1139045764\n4,1,Film-Noir,1139045765\n')
        rows = TagsReader(path).read()
        assert [r.tag for r in rows] == ["Dark, Moody", "Film-Noir"]
        assert rows[0].user_id == 3 and rows[0].timestamp == 1139045764

    def test_malformed_rows_are_counted(self, tmp_path):
        lines = ["userId,movieId,tag,timestamp"] + [f"1,{n},noir,{n}" for n in range(1, 201)]
        lines.append("1,2,noir,yesterday")
        lines.append("1,2")
        reader = TagsReader(write(tmp_path / 'tags.csv', "\n".join(lines) + "\n"))
        rows = reader.read()
        assert len(rows) == 200
        assert len(reader.errors) == 2
        assert reader.rows_read == 202
        assert reader.errors[0].line_number == 202

    def test_too_many_malformed_rows_abort(self, tmp_path):
        lines = ["userId,movieId,tag,timestamp", "1,1,noir,1", "1,x,noir,2"]
        with pytest.raises(DataError, match="malformed"):
            TagsReader(write(tmp_path / 'tags.csv', "\n".join(lines) + "\n")).read()

    def test_empty_file(self, tmp_path):
        assert TagsReader(write(tmp_path / 'tags.csv', "")).read() == []

    def test_basics_missing_markers(self, tmp_path):
        header = "tconst\ttitleType\tprimaryTitle\toriginalTitle\tisAdult\tstartYear\tendYear\truntimeMinutes\tgenres\n"
        body = ('tt0000001\tmovie\tThe "Killers"\tThe Killers\t0\t\\N\t\\N\t103\t\\N\n'
                'tt0000002\tshort\tOther\tOther\t0\t1950\t\\N\t10\tCrime,Film-Noir\n')
        rows = BasicsReader(write(tmp_path / 'basics.tsv', header + body), wanted={'tt0000001'}).read()
        assert len(rows) == 1
        assert rows[0].title == 'The "Killers"'
        assert rows[0].year is None
        assert rows[0].genres == ()


class TestIdOverrideTable:
    def test_resolve(self):
        table = IdOverrideTable(remaps={'tt1': 'tt2'}, exclusions={'tt9'})
        assert table.resolve('tt1') == 'tt2'
        assert table.resolve('tt5') == 'tt5'
        assert table.resolve('tt9') is None
        assert len(table) == 2

    def test_remap_target_cannot_be_excluded(self):
        with pytest.raises(ConfigError):
            IdOverrideTable(remaps={'tt1': 'tt2'}, exclusions={'tt2'})

    def test_load(self, tmp_path):
        path = write(tmp_path / 'o.csv', "stale_imdb_id,new_imdb_id\ntt0100099,tt0100035\ntt0100098,\n")
        table = IdOverrideTable.load(path)
        assert table.remaps == {'tt0100099': 'tt0100035'}
        assert table.exclusions == {'tt0100098'}

    def test_load_header_only_and_none(self, tmp_path):
        assert len(IdOverrideTable.load(write(tmp_path / 'o.csv', "stale_imdb_id,new_imdb_id\n"))) == 0
        assert len(IdOverrideTable.load(None)) == 0

    def test_duplicate_entries(self, tmp_path):
        path = write(tmp_path / 'o.csv', "stale_imdb_id,new_imdb_id\ntt1,tt2\ntt1,\n")
        with pytest.raises(ConfigError, match="duplicate"):
            IdOverrideTable.load(path)

    def test_wrong_columns(self, tmp_path):
        with pytest.raises(ConfigError, match="expected columns"):
            IdOverrideTable.load(write(tmp_path / 'o.csv', "old,new\ntt1,tt2\n"))


class TestCorpusLoader:
    def _load(self, paths, report=None):
        return load_corpus(paths['links_path'], paths['tags_path'], paths['basics_path'],
                           IdOverrideTable.load(paths['overrides_path']), report)

    def test_synthetic_counts(self, synthetic_corpus):
        report = IngestReport()
        films, tag_apps = self._load(synthetic_corpus, report)

        assert len(films) == EXPECTED['films_loaded']
        assert report.duplicates_merged == EXPECTED['duplicates_merged']
        assert report.overrides_applied == EXPECTED['overrides_applied']
        assert report.exclusions == EXPECTED['exclusions']
        assert report.missing_from_basics == EXPECTED['missing_from_basics']
        assert report.applications_unknown_film == EXPECTED['applications_unknown_film']
        assert report.malformed_rows['tags'] == EXPECTED['malformed_tags']
        assert report.applications_loaded == len(tag_apps)

    def test_item_ids_are_dense_in_imdb_order(self, synthetic_corpus):
        films, _ = self._load(synthetic_corpus)
        assert [f.item_id for f in films] == list(range(len(films)))
        assert [f.imdb_id for f in films] == sorted(f.imdb_id for f in films)

    def test_duplicate_links_merge_into_one_film(self, synthetic_corpus):
        films, tag_apps = self._load(synthetic_corpus)
        first = films[item_id_of(1)]
        assert first.imdb_id == imdb_id(1)
        assert first.movielens_ids == (1, 33)
        assert first.movielens_id == 1
        # the application made through movieId 33 lands on film 1
        assert any(app.item_id == first.item_id and app.user_id == 2 and app.raw_tag == 'dark' for app in tag_apps)

    def test_override_remaps_stale_id(self, synthetic_corpus):
        films, _ = self._load(synthetic_corpus)
        remapped = films[item_id_of(35)]
        assert remapped.imdb_id == imdb_id(35)
        assert remapped.movielens_ids == (35,)
        assert remapped.year is None

    def test_narrative_filter(self, synthetic_corpus):
        report = IngestReport()
        films, tag_apps = self._load(synthetic_corpus, report)
        kept = filter_narrative(films, report)
        kept_apps = retain_applications(tag_apps, kept, report)

        assert len(kept) == EXPECTED['films_retained']
        assert report.removed_title_type == 2
        assert report.removed_documentary == 1
        kept_ids = {f.item_id for f in kept}
        assert item_id_of(32) in kept_ids            # tvMovie survives
        assert item_id_of(31) not in kept_ids        # documentary
        assert all(app.item_id in kept_ids for app in kept_apps)
        assert report.applications_dropped == len(tag_apps) - len(kept_apps) > 0

    def test_thread_count_does_not_change_result(self, synthetic_corpus):
        overrides = IdOverrideTable.load(synthetic_corpus['overrides_path'])
        paths = (synthetic_corpus['links_path'], synthetic_corpus['tags_path'], synthetic_corpus['basics_path'])
        assert CorpusLoader(overrides, workers=1).load(*paths) == CorpusLoader(overrides, workers=4).load(*paths)


class TestFilmRecord:
    def _film(self, title_type, genres):
        return FilmRecord(0, (1,), 'tt1', 'Film', 1950, TitleType.from_imdb(title_type),
                          'Documentary' in genres, genres)

    def test_narrative(self):
        assert self._film('movie', ('Drama',)).is_narrative
        assert self._film('tvMovie', ('Drama',)).is_narrative
        assert not self._film('tvSeries', ('Drama',)).is_narrative
        assert not self._film('movie', ('Documentary',)).is_narrative

    def test_unknown_title_type(self):
        assert TitleType.from_imdb('videoGame') is TitleType.OTHER

    def test_positive_genre(self):
        film = self._film('movie', ('Crime', 'Film-Noir'))
        assert film.is_positive()
        assert not film.is_positive('Western')

    def test_retain_applications_without_report(self):
        film = self._film('movie', ('Drama',))
        apps = [TagApplication(1, 0, 'noir', 1), TagApplication(1, 5, 'noir', 2)]
        assert retain_applications(apps, [film]) == apps[:1]
