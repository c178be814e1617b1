from distutils.core import setup
from setuptools import find_packages

import os


setup(name='rainbow_poly',
      version='1.0',
      license='',
      classifiers=[
          'Programming Language :: Python :: 3.8',
      ],
      package_dir={'': os.path.join(os.getcwd(), 'src')},
      packages=find_packages(where='src', exclude=[]),
      install_requires=[
            'numpy',
            'matplotlib',
            'networkx',
            'sortedcontainers',
      ],
      extras_require={
            'test': ['pytest'],
      },
      entry_points={
            'console_scripts': ['rainbow-poly=rainbow_poly.experiments.experiment:main'],
      },
      )
