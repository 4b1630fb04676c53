# Configuration file for the Sphinx documentation builder.

import drinfeld_ext

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'numpydoc',
]

autosummary_generate = True
numpydoc_show_class_members = False

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'drinfeld-ext'
copyright = '2026, the drinfeld-ext developers'
author = 'the drinfeld-ext developers'

version = drinfeld_ext.__version__
release = drinfeld_ext.__version__

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'drinfeld_ext'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'galois': ('https://galois.readthedocs.io/en/stable/', None),
}
