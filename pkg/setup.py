# Copyright (c) The shrinkcs authors.
from setuptools import find_packages, setup


def readme():
    """Fetch readme content from README.md"""
    with open('README.md', encoding='utf-8') as f:
        content = f.read()
    return content


def get_version():
    """Get version from version.py"""
    version_file = 'shrinkcs/version.py'
    with open(version_file, 'r') as f:
        exec(compile(f.read(), version_file, 'exec'))
    return locals()['__version__']


def parse_requirements(fname='requirements.txt'):
    """
    Read the package dependencies listed in a requirements file.
    Comments, options (`-f`, `--find-links`, ...) and url lines are skipped.
    Args:
        fname (str): path to requirements file
    Returns:
        List[str]: requirement specifiers, version constraints kept
    """
    items = []
    with open(fname, 'r') as f:
        for line in f:
            line = line.split('#', 1)[0].strip()
            if not line or line.startswith('-') or line.startswith('http'):
                continue
            items.append(line)
    return items


setup(
    name='shrinkcs',
    version=get_version(),
    description='shrinkcs: shrinkage penalties, sparse recovery solvers and recovery certificates',
    long_description=readme(),
    long_description_content_type='text/markdown',
    platforms='any',
    python_requires='>=3.8.0',
    install_requires=parse_requirements('requirements.txt'),
    packages=find_packages(exclude=['tests', 'tests.*']),
    package_dir={'shrinkcs': 'shrinkcs'},
    license='Apache License 2.0',
    entry_points={'console_scripts': ['shrinkcs=shrinkcs.main:run']},
)  # yapf: disable
