from setuptools import find_packages, setup

setup(
    name='quantum-torsion-balance',
    packages=find_packages(include=['src', 'src.*']),
    package_data={'src.scenario': ['presets/*.yaml']},
    version='1.0.0',
    description='Quantum torsion balance simulator',
    license='MIT',
)
