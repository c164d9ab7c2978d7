"""Strong exceptional sequences of Schur powers on quiver GIT quotients."""

__version__ = "0.1.0"
