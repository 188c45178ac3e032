"""Bundled and generated CSS datasets.

The classic CSS collections (High Tech Managers, Silicon Systems, Pacific
Distributers, Government Office, Italian University) are survey data and are
not redistributable from here; this build ships none of them.  The package
reads them from your own files: the public High Tech Managers advice CSS
(Krackhardt 1987) circulates as a UCINET DL file (``krackad.dat``), which
``cssnet convert`` turns into the native format::

    cssnet convert krackad.dat hightech.css

:func:`load_hightech` then finds it either at ``src/cssnet/data/hightech.css``
(drop it in and reinstall, or edit in place for an editable install) or at
the path named by the ``CSSNET_HIGHTECH`` environment variable.

For demos and experiments without survey data, :func:`synthetic_css` draws a
deterministic synthetic CSS with the empirically typical error structure:
commission rates low, omission rates high, the two negatively correlated
across perceivers, and each perceiver most reliable about their own dyads.
A pre-generated 21-actor instance ships as ``data/synthetic21.css``.
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np

from .io import parse_css, parse_css_text
from .model import CssArray

__all__ = ["load_hightech", "load_synthetic21", "synthetic_css"]

SYNTHETIC21_SEED = 1987


def _bundled(name: str):
    return resources.files(__package__) / "data" / name


def load_hightech() -> CssArray:
    """The High Tech Managers advice CSS (21 actors), if available.

    Not bundled in this build; see the module docstring for how to supply it.
    """
    override = os.environ.get("CSSNET_HIGHTECH")
    if override:
        return parse_css(override)
    ref = _bundled("hightech.css")
    if not ref.is_file():
        raise FileNotFoundError(
            "hightech.css is not bundled in this build: the survey data could "
            "not be redistributed from the build environment. Obtain the "
            "public Krackhardt advice CSS (e.g. UCINET's krackad.dat), run "
            "'cssnet convert krackad.dat hightech.css', and place the result "
            "at src/cssnet/data/hightech.css or point CSSNET_HIGHTECH at it."
        )
    return parse_css_text(ref.read_text(), "data/hightech.css")


def load_synthetic21() -> CssArray:
    """The bundled synthetic 21-actor CSS used by the demos."""
    ref = _bundled("synthetic21.css")
    return parse_css_text(ref.read_text(), "data/synthetic21.css")


def synthetic_css(
    n_actors: int,
    seed: int,
    truth_density: float = 0.13,
    relation_name: str = "advice",
    label_actors: bool = False,
) -> CssArray:
    """Draw a synthetic CSS array with realistic perceiver error structure.

    A latent tie pattern is drawn at ``truth_density``; each perceiver m then
    reports a noisy view of it.  A liberality trait u_m in (0, 1) sets the
    error tendencies: commission probability grows with u_m while omission
    probability shrinks, so across perceivers the two error rates come out
    negatively correlated.  Cells on a perceiver's own row or column are
    reported with errors damped to a quarter, keeping self-reports far more
    reliable than hearsay.  Fully deterministic in (n_actors, seed, ...).

    The package's working truth for the result is still whatever
    :func:`cssnet.derive_truth` extracts from the self-reports, exactly as
    with survey data.
    """
    if n_actors < 2:
        raise ValueError("a synthetic CSS needs at least 2 actors")
    if not 0 < truth_density < 1:
        raise ValueError("truth_density must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    n = n_actors
    latent = (rng.random((n, n)) < truth_density).astype(np.uint8)
    np.fill_diagonal(latent, 0)

    liberality = rng.beta(2.0, 2.0, size=n)
    commission = 0.01 + 0.28 * liberality**2
    omission = 0.85 - 0.62 * liberality

    cells = np.zeros((n, n, n), dtype=np.uint8)
    eye = np.eye(n, dtype=bool)
    for m in range(n):
        own = np.zeros((n, n), dtype=bool)
        own[m, :] = True
        own[:, m] = True
        p_commit = np.where(own, commission[m] / 4, commission[m])
        p_omit = np.where(own, omission[m] / 4, omission[m])
        u = rng.random((n, n))
        perceived = np.where(latent == 1, u >= p_omit, u < p_commit)
        perceived[eye] = False
        cells[:, :, m] = perceived.astype(np.uint8)

    labels = [f"a{m}" for m in range(1, n + 1)] if label_actors else None
    return CssArray(
        n_actors=n,
        relation_name=relation_name,
        cells=cells,
        actor_labels=labels,
    )
