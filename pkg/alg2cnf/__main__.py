import sys

from alg2cnf.manage import manage

if __name__ == "__main__":
    sys.exit(manage())
