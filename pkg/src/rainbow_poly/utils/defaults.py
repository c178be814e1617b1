from fractions import Fraction

CCW = 'ccw'
CW = 'cw'
COLLINEAR = 'collinear'

INTERIOR = 'interior'
BOUNDARY = 'boundary'
EXTERIOR = 'exterior'

W_ABSENT = 'w_absent'
W_SAME_COLOR = 'w_same_color'
W_OTHER_COLOR = 'w_other_color'

S4 = 's4'
S5 = 's5'
S6 = 's6'
S7 = 's7'
TWINS = 'twins'
RANDOM = 'random'
REDUCTION = 'reduction'
HARD_KINDS = (S4, S5, S6, S7)
INSTANCE_KINDS = (S4, S5, S6, S7, TWINS, RANDOM, REDUCTION)

RB_INDEX_SMALL = {3: 3, 4: 4, 5: 5, 6: 6, 7: 8}

DEFAULT_EPSILON = Fraction(1, 10 ** 6)
MAX_HALVINGS = 200
S7_INNER_OFFSET = Fraction(1, 100)
TWINS_EPS = Fraction(1, 100)
RANDOM_BBOX = (Fraction(0), Fraction(0), Fraction(1000), Fraction(1000))
RANDOM_DENOMINATOR = 1000
TWINS_FULL_CHECK_K = 12

PALETTE = ('#e41a1c', '#377eb8', '#4daf4a', '#ff7f00', '#984ea3', '#ffd92f',
           '#a65628', '#f781bf', '#999999', '#66c2a5', '#fc8d62', '#8da0cb')
# larger sets only reject duplicate points
GP_FULL_CHECK_N = 3000
RECIPE_HALVINGS = 64
REPRESENTATIVE_ATTEMPTS = 8
GRID_DENSITY = Fraction(1, 16)
INSTANCE_ATTEMPTS = 50
REDUCTION_MAX_GRID = 250000
TWINS_SAMPLED_QUADRUPLES = 5000
LOCATE_CHUNK = 4096
EXACT_CLEARANCE_WORK = 20000
CLEARANCE_SLACK = 1e-9
