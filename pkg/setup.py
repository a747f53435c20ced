from pathlib import Path

from setuptools import find_packages, setup


def get_readme():
    """Load README.rst for display on PyPI."""
    with open("README.rst") as fhandle:
        return fhandle.read()


def get_extra_requires(path: str):
    req = Path(path).read_text()
    req = req.split('.. tab-end')[1]
    req = req.strip()
    req = req.split('\n')

    req_dict = {'all': set()}
    for r in req:
        pack, key = (_.strip() for _ in r.split(':'))
        req_dict['all'].add(pack)
        for k in (_.strip() for _ in key.split(',')):
            req_dict.setdefault(k, set()).add(pack)

    return req_dict


with open('pathorder/_version.py', 'r') as file:
    exec(file.read())

setup(
    name="pathorder",
    version=__version__,
    description="Simulation and order-preservation checks for path-distribution dependent SDEs",
    long_description=get_readme(),
    packages=find_packages(exclude=('tests', 'tests.*')),
    include_package_data=True,
    package_dir={"pathorder": "pathorder"},
    package_data={"pathorder": ["schemas/*.json"]},
    install_requires=['numpy>=1.20', 'scipy>=1.6', 'PyYAML>=5.1.2', 'tables>=3.6.1'],
    python_requires='>=3.7',
    extras_require=get_extra_requires('extra_requirements.txt'),
    entry_points={'console_scripts': ['pathorder = pathorder.cli.main:main']},
)
