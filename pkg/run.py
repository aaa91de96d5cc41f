"""
Runnable script for the weak-saturation laboratory.

    python run.py verify --host complete:8 --pattern kst:3,3 --construction gn
"""

from src.main import main

if __name__ == "__main__":
    main()
