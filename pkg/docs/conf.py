# -*- coding: utf-8 -*-
#
# Sphinx configuration of the selmer-census documentation.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

about: dict = {}
with open(os.path.join(os.path.abspath(".."), "selmer", "__version__.py")) as f:
    exec(f.read(), about)

# -- Project information -----------------------------------------------------

project = "selmer-census"
copyright = "2026, The selmer-census authors"
author = "The selmer-census authors"

release = about["__version__"]
version = ".".join(release.split(".")[:2])

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.napoleon",
    "sphinx.ext.autodoc",
    "sphinx_autodoc_typehints",
    "sphinx.ext.coverage",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
autodoc_member_order = "bysource"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "display_version": True,
    "prev_next_buttons_location": "bottom",
    "collapse_navigation": False,
    "sticky_navigation": True,
    "navigation_depth": 4,
}
html_static_path = []
htmlhelp_basename = "selmer-census-doc"

# -- Options for other builders ----------------------------------------------

latex_documents = [
    (master_doc, "selmer-census.tex", "selmer-census Documentation", author, "manual"),
]
man_pages = [
    (master_doc, "selmer-census", "selmer-census Documentation", [author], 1),
]
