# cli.py

from src.reports.cli import main

if __name__ == "__main__":
    main()
