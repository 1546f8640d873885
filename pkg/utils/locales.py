class LocaleConfig:
    LOCALES = {
        'en': {
            'columns': {
                'index': '#',
                'class': 'class',
                'multiplicity': 'mult',
                'residual': 'residual',
                'real': 'real',
                'coefficients': 'coefficients y1..yN',
                'bound': 'bound',
                'count': 'count',
                'relation': 'relation',
            },
            'classes': {
                'P0': 'P0',
                'P1minusP0': 'P1\\P0',
                'Pt': 'Pt',
                'Unclassified': 'unclassified',
            },
            'audit': {
                'equal': 'equality',
                'strict': 'strict',
                'violated': 'VIOLATED',
                'not_applicable': 'not applicable (N < 3)',
                'passed': '✅ all audits passed',
                'failed': '❌ audit mismatch',
                'summary': 'summary',
                'paths': 'paths',
                'empty': '(no solutions)',
                'certificate': 'irreducible mod p =',
                'inconclusive': 'inconclusive',
            },
        },
        'zh': {
            'columns': {
                'index': '#',
                'class': '类别',
                'multiplicity': '重数',
                'residual': '残差',
                'real': '实',
                'coefficients': '系数 y1..yN',
                'bound': '上界',
                'count': '计数',
                'relation': '关系',
            },
            'classes': {
                'P0': 'P0',
                'P1minusP0': 'P1\\P0',
                'Pt': 'Pt',
                'Unclassified': '未分类',
            },
            'audit': {
                'equal': '取等',
                'strict': '严格',
                'violated': '违反',
                'not_applicable': '不适用 (N < 3)',
                'passed': '✅ 全部审计通过',
                'failed': '❌ 审计不一致',
                'summary': '汇总',
                'paths': '路径',
                'empty': '（无解）',
                'certificate': '模 p 不可约, p =',
                'inconclusive': '无结论',
            },
        },
        'ja': {
            'columns': {
                'index': '#',
                'class': '分類',
                'multiplicity': '重複度',
                'residual': '残差',
                'real': '実',
                'coefficients': '係数 y1..yN',
                'bound': '上界',
                'count': '個数',
                'relation': '関係',
            },
            'classes': {
                'P0': 'P0',
                'P1minusP0': 'P1\\P0',
                'Pt': 'Pt',
                'Unclassified': '未分類',
            },
            'audit': {
                'equal': '等号',
                'strict': '厳密',
                'violated': '違反',
                'not_applicable': '対象外 (N < 3)',
                'passed': '✅ 監査すべて合格',
                'failed': '❌ 監査不一致',
                'summary': '集計',
                'paths': 'パス',
                'empty': '（解なし）',
                'certificate': 'mod p で既約, p =',
                'inconclusive': '判定不能',
            },
        },
    }

    @classmethod
    def get_columns(cls, locale='en'):
        return cls.LOCALES.get(locale, cls.LOCALES['en']).get('columns', {})

    @classmethod
    def get_classes(cls, locale='en'):
        return cls.LOCALES.get(locale, cls.LOCALES['en']).get('classes', {})

    @classmethod
    def get_audit(cls, locale='en'):
        return cls.LOCALES.get(locale, cls.LOCALES['en']).get('audit', {})

class Locale:
    def __init__(self, locale='en'):
        self.locale = locale if locale in LocaleConfig.LOCALES else 'en'
        self.column_map = LocaleConfig.get_columns(self.locale)
        self.class_map = LocaleConfig.get_classes(self.locale)
        self.audit_map = LocaleConfig.get_audit(self.locale)

    def column(self, key):
        """获取表头文本"""
        return self.column_map.get(key, key)

    def klass(self, value):
        """获取类别名称"""
        return self.class_map.get(value, value)

    def audit(self, key):
        """获取审计文本"""
        return self.audit_map.get(key, key)
