#!/usr/bin/env python
''' charmoment Setup '''

from setuptools import setup, find_packages

with open('README.md', 'r', encoding='utf-8') as fh:
    LONG_DESCRIPTION = fh.read()

setup(name='charmoment',
      version='0.1',
      description='Numerical verification of moments of consecutive character differences '
                  'over prime fields',
      long_description=LONG_DESCRIPTION,
      long_description_content_type='text/markdown',
      license='Apache-2.0',
      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: Apache Software License',
          'Operating System :: OS Independent',
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: 3.8',
          'Topic :: Scientific/Engineering :: Mathematics',
          ],
      install_requires=[
          "click>=7.1.2",
          "numpy>=1.18.4",
          "sympy>=1.9",
          ],
      packages=find_packages(exclude=['tests*']),
      python_requires=">=3.8",
      scripts=['scripts/charmoment'],)
