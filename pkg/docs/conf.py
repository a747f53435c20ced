# Sphinx configuration of the pathorder documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = 'pathorder'
copyright = '2026, pathorder developers'
author = 'pathorder developers'

with open('../pathorder/_version.py', 'r') as file:
    exec(file.read())

# noinspection PyUnresolvedReferences
release = __version__

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.napoleon',
              'sphinx.ext.viewcode',
              'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax',
              'sphinx_rtd_theme',
              'sphinx.ext.autosectionlabel',
              ]
exclude_patterns = ['_build']
master_doc = 'index'
modindex_common_prefix = ['pathorder.']
autosectionlabel_prefix_document = False

# -- HTML output -------------------------------------------------------------

html_theme = 'sphinx_rtd_theme'

# -- Cross references --------------------------------------------------------

nitpicky = True
nitpick_ignore = [('py:class', name) for name in ('List', 'Dict', 'Set', 'Sequence', 'Tuple', 'Any', 'Callable',
                                                  'Union', 'Optional', 'Iterator', 'Generator', 'numpy.ndarray',
                                                  'ParticleCloud', 'Executor')]

autodoc_mock_imports = ['tables', 'jsonschema', 'pytest']
autoclass_content = 'both'

napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False
napoleon_include_special_with_doc = True
napoleon_use_admonition_for_notes = True

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'tables': ('https://www.pytables.org', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
