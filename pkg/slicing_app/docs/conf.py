# Конфигурация Sphinx для документации RAN Slicing Planner
#
# Сборка: sphinx-build -b html docs docs/_build

import os
import sys
sys.path.insert(0, os.path.abspath('../'))

from app import __version__  # noqa: E402

# -- Проект -------------------------------------------------------------------

project = 'RAN Slicing Planner'
copyright = '2024, RAN Slicing Team'
author = 'RAN Slicing Team'
release = __version__
language = 'ru'

# -- Общие настройки ----------------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

# Настройки импорта app.config читают .env; в сборке документации он не нужен
os.environ.setdefault('RANSLICE_LOG_LEVEL', 'WARNING')

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'
autodoc_default_options = {
    'members': True,
    'undoc-members': False,
    'show-inheritance': True,
}

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'simpy': ('https://simpy.readthedocs.io/en/latest/', None),
}

# -- HTML ---------------------------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
html_title = f'RAN Slicing Planner {release}'

# -- Napoleon -----------------------------------------------------------------

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_special_with_doc = False
napoleon_use_param = True
napoleon_use_rtype = True
