''' Standard file for building the package with setuptools. '''

import setuptools
setuptools.setup()
