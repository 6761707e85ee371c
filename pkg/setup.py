from setuptools import setup, find_packages

setup(
    name="opineq",
    version="0.1.0",
    author="Vikash Das",
    author_email="vikashdas770@gmail.com",
    packages=find_packages(include=["src", "src.*"]),
    py_modules=["app"],
)
