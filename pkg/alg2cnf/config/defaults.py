# ##############################################################################
#  This file is part of alg2cnf                                                #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Default values of all settings.

Values can be overridden by `<prefix>/etc/alg2cnf/settings.ini`, by `ALG2CNF_*` environment
variables, by `./local_settings.ini` and finally by the `--config` file of the command line.
"""
from alg2cnf.config.dynamic_settings import SettingReference

DEBUG = False
LOG_LEVEL = "warning"
LOG_DIRECTORY = None
CORPUS_DIRECTORY = None

# 0 disables gate fusion; otherwise the maximal number of leaves of a fused truth table
TRANSLATE_FUSE_LIMIT = 6
TRANSLATE_ZERO_INIT = False
TRANSLATE_PRUNE = True
TRANSLATE_ITE_EXTRA = False
MINIMIZE_EXACT_LIMIT = 8

SOLVER_VAR_DECAY = 0.95
SOLVER_CLAUSE_DECAY = 0.999
SOLVER_INPUT_PRIORITY = 2.0
SOLVER_RESTART_BASE = 100
SOLVER_PHASE_SAVING = True
SOLVER_TIME_LIMIT = 0.0
SOLVER_CONFLICT_LIMIT = 0
SOLVER_SEED = 0
SOLVER_EXTERNAL = None
SOLVER_JOBS = 1

VERIFY_TRIALS = 100
VERIFY_SEED = SettingReference("SOLVER_SEED")
