from setuptools import setup, find_packages

setup(
    name='ideal_duality',
    version='0.1.0',
    author='Jasser Cerda',
    author_email='cerdajasser@gmail.com',
    description='Exact duality analyses for polynomial ideals and modules: resolutions, Ext, purity, '
                'Noetherian operators and residues.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests']),
    py_modules=['main'],
    install_requires=[
        'sympy>=1.12',
    ],
    entry_points={
        'console_scripts': [
            'ideal-duality=main:main',
        ],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
    ],
)
