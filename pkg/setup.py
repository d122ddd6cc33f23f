from setuptools import find_packages, setup


def load_requirements(fname):
    with open(fname) as f:
        reqs = [l.split('#', 1)[0].strip() for l in f]
    return [r for r in reqs if r]

setup(
    name='portsim',
    version='0.1.0',
    author='portsim developers',
    packages=find_packages(exclude=['examples', 'docs', 'tests', 'tools',
                                    'scenarios', 'setup.py']),
    license='Lesser GPL v2.1',
    description='Simulation and property checking of timed port automata',
    python_requires=">=3.7.0",
    install_requires=load_requirements("requirements.txt"),
    extras_require={'mpi': ['mpi4py >= 3.0.0']},
    scripts=['bin/portsim'],
    long_description=open('README.rst').read(),
)
