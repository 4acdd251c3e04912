from pathlib import Path
import setuptools

BASE_DIR = Path(__file__).resolve().parent
long_description = (BASE_DIR / "README.md").read_text(encoding="utf-8")

setuptools.setup(
    # info
    name="apme",
    description="apme estimates question difficulty from marks and time and checks it with a bandit simulation",
    license="MIT",
    # README
    long_description=long_description,
    long_description_content_type="text/markdown",
    # SCM versioning (git tags)
    use_scm_version={"fallback_version": "0.1.0"},
    setup_requires=["setuptools_scm"],
    # find and add packages
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    # requirements and search
    python_requires=">=3.9",
    install_requires=["numpy>=1.22", "pandas>=2.0", "scipy", "scikit-learn", "matplotlib"],
    extras_require={"tests": ["pytest"]},
    entry_points={"console_scripts": ["apme=apme.cli:main"]},
    keywords=["item difficulty", "multi-armed bandit", "thompson sampling", "assessment"],
)
