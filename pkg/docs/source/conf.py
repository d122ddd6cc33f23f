# -*- coding: utf-8 -*-
#
# portsim documentation build configuration file.

import os
import sys
sys.path.insert(0, os.path.abspath('../../'))
import mock
MOCK_MODULES = ['h5py', 'mpi4py']
for mod_name in MOCK_MODULES:
    sys.modules[mod_name] = mock.Mock()

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.intersphinx', 'sphinx.ext.autodoc',
              'sphinx.ext.napoleon', 'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = 'portsim'
copyright = 'portsim developers'
author = 'portsim developers'

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'portsimdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}
latex_documents = [
    (master_doc, 'portsim.tex', 'portsim Documentation',
     author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'portsim', 'portsim Documentation',
     [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/pandas-docs/stable/', None),
}
