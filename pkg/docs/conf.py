# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sphinx configuration."""

from stochastic_sea import __version__

# -- General configuration ------------------------------------------------

# Do not warn on external images.
suppress_warnings = ["image.nonlocal_uri"]

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.coverage",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]

source_suffix = ".rst"

master_doc = "index"

project = "Stochastic-Sea"
copyright = "2026, Stochastic-Sea contributors"
author = "Stochastic-Sea contributors"

# The short X.Y version and the full version, including alpha/beta/rc tags.
version = __version__
release = __version__

language = "en"

exclude_patterns = ["_build"]

pygments_style = "sphinx"

todo_include_todos = False

autodoc_member_order = "bysource"


# -- Options for HTML output ----------------------------------------------
html_theme = "alabaster"

html_theme_options = {
    "description": "Dimension bounds for horseshoes and the standard map.",
    "github_button": False,
    "github_banner": False,
    "show_powered_by": False,
}

htmlhelp_basename = "stochastic-sea_namedoc"

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (
        master_doc,
        "stochastic-sea.tex",
        "Stochastic-Sea Documentation",
        "Stochastic-Sea contributors",
        "manual",
    ),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, "stochastic-sea", "Stochastic-Sea Documentation", [author], 1)
]

# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}
