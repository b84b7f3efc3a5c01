from rest_framework import serializers


class GeneratorSetSerializer(serializers.Serializer):
    generators = serializers.ListField(child=serializers.CharField())
    representatives = serializers.ListField(child=serializers.CharField())
    size = serializers.IntegerField()


class TermDecompositionSerializer(serializers.Serializer):
    """One term's signed product over R, rendered with operator labels"""
    label = serializers.CharField()
    sign = serializers.IntegerField(source='decomposition.sign')
    generators = serializers.SerializerMethodField()
    representative = serializers.SerializerMethodField()
    expression = serializers.SerializerMethodField()

    def get_generators(self, obj):
        gset = obj['generator_set']
        return [gset.generators[j].label for j in obj['decomposition'].generator_indices]

    def get_representative(self, obj):
        index = obj['decomposition'].clique_index
        return None if index is None else obj['generator_set'].representatives[index].label

    def get_expression(self, obj):
        gset = obj['generator_set']
        return obj['decomposition'].describe(gset.generators, gset.representatives)
