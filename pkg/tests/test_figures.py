"""Chart rendering tests."""

from scratchlint.figures import render_corpus_figures
from scratchlint.report import CorpusStats, analyze_corpus


def test_renders_three_charts(fixture_corpus_dir, tmp_path):
    stats = analyze_corpus(fixture_corpus_dir)
    outdir = tmp_path / "charts"
    paths = render_corpus_figures(stats, outdir)
    assert [p.name for p in paths] == [
        "pattern_projects.png",
        "pattern_instances.png",
        "pattern_avg_wmc.png",
    ]
    for path in paths:
        assert path.exists()
        assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_renders_empty_stats(tmp_path):
    paths = render_corpus_figures(CorpusStats.empty(), tmp_path / "charts")
    assert len(paths) == 3
