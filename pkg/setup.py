#!/usr/bin/env python

from setuptools import setup, find_packages

setup(name='pascalpi',
      version='0.1.0',
      description='Verifies e and pi identities read off Pascal\'s and the '
                  'Lucas triangle with exact combinatorics and arbitrary '
                  'precision numerics.',
      python_requires='>=3.8',
      install_requires=[
          'PyYAML>=5.1',
          'mpmath>=1.1',
      ],
      entry_points={
          'console_scripts': [
              'pascalpi = pascalpi.cli:entry'
          ]
      },
      package_data={'pascalpi': ['defaults.yml']},
      packages=find_packages()
      )
