#!/usr/bin/env python

"""
spikedfisher
------------

Spiked eigenvalues of generalized Fisher matrices: phase transition,
limit laws and Monte Carlo checks.
"""

import os.path as op
import io

from   setuptools              import setup, find_packages


# long description
def read(*filenames, **kwargs):
    encoding = kwargs.get('encoding', 'utf-8')
    sep = kwargs.get('sep', '\n')
    buf = []
    for filename in filenames:
        with io.open(filename, encoding=encoding) as f:
            buf.append(f.read())
    return sep.join(buf)


def read_requirements(filename):
    return [line.strip() for line in read(filename).splitlines()
            if line.strip() and not line.startswith('#')]


# Get version without importing, which avoids dependency issues
MODULE_NAME = 'spikedfisher'
VERSION_PYFILE = op.join(MODULE_NAME, 'version.py')
# set __version__ variable
exec(compile(read(VERSION_PYFILE), VERSION_PYFILE, 'exec'))


LICENSE = 'Apache License, Version 2.0'


setup_dict = dict(
    name=MODULE_NAME,
    version=__version__,
    description='Spiked eigenvalues of generalized Fisher matrices.',

    license=LICENSE,
    maintainer='',
    maintainer_email='',

    packages=find_packages(include=[MODULE_NAME, MODULE_NAME + '.*']),

    install_requires=read_requirements('requirements.txt'),

    entry_points={
        'console_scripts': ['spikedfisher = spikedfisher.cli:main'],
    },

    long_description=read('README.md', 'CHANGES.md'),
    long_description_content_type='text/markdown',

    platforms='Linux/MacOSX',

    python_requires='>=3.8',

    # https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Programming Language :: Python',
        'Development Status :: 3 - Alpha',
        'Natural Language :: English',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Information Analysis',
        'Operating System :: POSIX',
        'Operating System :: Unix',
        'Operating System :: MacOS',
        'Programming Language :: Python :: 3',
    ],

    extras_require={'tests': ['pytest'],
                    'docs': ['mkdocs',
                             'recommonmark']
                   }
)


if __name__ == '__main__':
    setup(**setup_dict)
