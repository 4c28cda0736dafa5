# === Настройки приложения ===
APP_TITLE = "FHSF: быстрый HSL-фильтр импульсного шума"

# === Окно фильтра ===
WINDOW_SIDE = 3
WINDOW_SIZE = WINDOW_SIDE * WINDOW_SIDE
WINDOW_CENTER = WINDOW_SIZE // 2
WINDOW_PAIRS = WINDOW_SIZE * (WINDOW_SIZE - 1) // 2
TIE_TOLERANCE = 1e-9

# === Пространство HSL ===
HUE_RANGE = 360.0
SATURATION_MAX = 100.0
LIGHTNESS_MAX = 255.0
CHANNEL_MAX = 255

# === Параметры фильтров по умолчанию ===
DEFAULT_M = 3
DEFAULT_HT = 10.0
DEFAULT_ST = 10.0
DEFAULT_LT = 48.0
DEFAULT_FPGF2_TOL = 45.0
DEFAULT_FPGF1_TOL = 75.0
DEFAULT_HSL_TOL = 40.0
DEFAULT_VMF_NORM = 2
DDF_GAMMA = 0.5
MIN_M = 1
MAX_M = WINDOW_SIZE - 1

# === Модель шума ===
DEFAULT_NOISE_P = 0.05
DEFAULT_CHANNEL_MIX = (0.25, 0.25, 0.25, 0.25)
DEFAULT_IMPULSES = (0, 255)
DEFAULT_SEED = 0
MIX_TOLERANCE = 1e-12

# === Цвет: sRGB, D65, оппонентное пространство ===
SRGB_TO_XYZ = (
    (0.4124564, 0.3575761, 0.1804375),
    (0.2126729, 0.7151522, 0.0721750),
    (0.0193339, 0.1191920, 0.9503041),
)
D65_WHITE = (0.95047, 1.0, 1.08883)
OPPONENT_MATRIX = (
    (0.279, 0.72, -0.107),
    (-0.449, 0.29, -0.077),
    (0.086, -0.59, 0.501),
)
SINGULAR_DET = 1e-12

# === S-CIELAB ===
SAMPLES_PER_DEGREE = 23.0
KERNEL_RADIUS_FACTOR = 3.0
SCIELAB_PLANES = (
    ((0.921, 0.0283), (0.105, 0.133), (-0.108, 4.336)),
    ((0.531, 0.0392), (0.330, 0.494)),
    ((0.488, 0.0536), (0.371, 0.386)),
)

# === Подбор параметров ===
GRID_M_RANGE = (1, 8, 1)
GRID_HT_RANGE = (6, 20, 2)
GRID_ST_RANGE = (4, 16, 2)
GRID_LT_RANGE = (32, 64, 4)
TOP_FRACTION = 0.05
RANGE_EPSILON = 1e-9

# === Сравнение фильтров ===
BENCH_REPEATS = 3
NONE_ROW = "NONE"
DIFF_GAIN = 5

# === Переменные окружения и файлы ===
ENV_DEBUG = "DEBUG"
ENV_CONFIG = "FHSF_CONFIG"
ENV_HOME = "FHSF_HOME"
JOURNAL_FILENAME = "fhsf_journal.json"
LOGS_DIR = "logs"
QUIET_LOGGERS = ("numba", "PIL")
DATE_FORMAT_LOGS = "%Y-%m-%d"
DATE_FORMAT_JOURNAL = "%d.%m.%Y %H:%M"
CSV_DELIMITER = ";"
CSV_ENCODING = "utf-8-sig"
PPM_MAGIC = b"P6"
PPM_MAXVAL = 255

# === Коды завершения ===
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_PARAMS = 5
EXIT_METRIC = 6
EXIT_CONFIG = 7

# === Сообщения журнала и ошибок ===
DEBUG_MODE_ON = "Программа запущена в режиме отладки"
LOG_START = "Запуск FHSF"
LOG_IMAGE_LOADED = "Загружено изображение {} ({}x{})"
LOG_IMAGE_SAVED = "Сохранено изображение {} ({}x{})"
LOG_PPM_TRAILING = "Файл {}: после данных изображения {} лишних байт"
LOG_NOISE_DONE = "Шум p={} seed={}: искажено {} из {} пикселей"
LOG_FILTER_DONE = (
    "Фильтр {} ({}x{}, потоков {}): заменено {}, вычислений {}, {:.4f} с"
)
LOG_METRICS_DONE = "Метрики: MAE={:.4f} MSE={:.4f} NCD={:.6f} PCD={:.4f}"
LOG_TUNE_IMAGE = "Подбор: изображение {} из {}, конфигураций {}"
LOG_TUNE_EMPTY = "Пересечение лучших {:.1%} конфигураций пусто"
LOG_CONFIG_LOADED = "Загружена конфигурация {}"
LOG_CONFIG_UNKNOWN_KEY = "Неизвестный ключ конфигурации {} пропущен"
LOG_BENCH_ROW = "Сравнение: {} MAE={:.3f} время={:.4f} с"

ERROR_PPM_HEADER = "Некорректный заголовок PPM: {}"
ERROR_PPM_MAXVAL = "Поддерживается только maxval 255, получено {}"
ERROR_PPM_TRUNCATED = "Данные PPM обрезаны: ожидалось {} байт, получено {}"
ERROR_IMAGE_SHAPE = "Изображение должно иметь форму (H, W, 3), получено {}"
ERROR_IMAGE_RANGE = "Значения каналов должны лежать в [0, 255]"
ERROR_WINDOW_COORDS = "Координаты ({}, {}) вне изображения {}x{}"
ERROR_WINDOW_SIZE = "Окно должно содержать {} пикселей, получено {}"
ERROR_DIMENSIONS = "Размеры изображений не совпадают: {}x{} и {}x{}"
ERROR_NCD_DENOMINATOR = "NCD не определена: исходное изображение полностью чёрное"
ERROR_UNKNOWN_KIND = "Неизвестный тип фильтра: {}"
ERROR_PARAMS_SHAPE = "Параметры {} не подходят для фильтра {}"
ERROR_PARAM_M = "Размер группы m должен лежать в [{}, {}], получено {}"
ERROR_PARAM_NEGATIVE = "Порог {} должен быть неотрицательным, получено {}"
ERROR_PARAM_NORM = "Порядок нормы должен быть 1 или 2, получено {}"
ERROR_WORKERS = "Число потоков должно быть не меньше 1, получено {}"
ERROR_NOISE_P = "Вероятность шума должна лежать в [0, 1], получено {}"
ERROR_NOISE_MIX = "Веса смеси каналов должны быть неотрицательны и давать в сумме 1: {}"
ERROR_NOISE_IMPULSES = "Набор импульсов должен быть непустым и лежать в [0, 255]: {}"
ERROR_NOISE_SEED = "Seed должен быть 64-битным неотрицательным целым: {}"
ERROR_VALUE_NEGATIVE = "Значение должно быть неотрицательным, получено {}"
ERROR_VALUE_POSITIVE = "Значение должно быть целым числом не меньше 1, получено {}"
ERROR_GRID_STEP = "Шаг диапазона должен быть положительным: {}"
ERROR_GRID_RANGE = "Диапазон {} пуст"
ERROR_GRID_M = "Значения m в сетке должны быть целыми: {}"
ERROR_NO_IMAGES = "Не задано ни одного изображения"
ERROR_FRACTION = "Доля должна лежать в (0, 1], получено {}"
ERROR_CONFIG_SINGULAR = "Матрица оппонентного преобразования вырождена"
ERROR_CONFIG_VALUE = "Некорректное значение {}={}: {}"
ERROR_CONFIG_SPREAD = "Параметры S-CIELAB должны быть положительными: {}"
ERROR_LOAD_HISTORY = "Ошибка загрузки журнала: {}"
ERROR_SAVE_HISTORY = "Ошибка сохранения журнала:\n{}"
ERROR_EXPORT_HISTORY_IO = "Не удалось сохранить файл журнала:\n{}"
ERROR_RANGE_FORMAT = "Ожидается диапазон вида lo:hi:step, получено {}"
ERROR_LIST_FORMAT = "Ожидается список чисел через запятую, получено {}"
ERROR_RELAX_FORMAT = "Ожидается список вида ht=28,st=20,lt=80, получено {}"
ERROR_HSL_DUMP = "Некорректная строка дампа HSL: {}"
NO_HISTORY_MESSAGE = "Журнал запусков пуст."
TUNE_EMPTY_DIAGNOSTIC = (
    "Пересечение лучших {:.1%} конфигураций по {} изображениям пусто; "
    "увеличьте долю или сузьте сетку"
)

# === Подписи отчётов ===
REPORT_COLUMNS = ("Filter", "MAE", "MSE", "NCD", "PCD", "Time")
TUNE_COLUMNS = ("image", "m", "Ht", "St", "Lt", "PCD", "MAE", "MSE", "NCD")
HISTORY_COLUMNS = ("Дата запуска", "Команда", "Вход", "Параметры", "Строк")
HSL_DUMP_COLUMNS = ("x", "y", "r", "g", "b", "h", "s", "l")
TITLE_TOP_FRACTION = "Лучшие {:.1%} конфигураций (пересечение, {} шт.):"
TITLE_RANGES = "Рекомендуемые диапазоны:"
TITLE_MIN_PCD = "Минимальный PCD по m:"
