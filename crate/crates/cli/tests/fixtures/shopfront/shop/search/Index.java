// Index: part of the shopfront fixture
package shop.search;

public class Index {
    int total6 = 6 * 2;
    private Product product0 = new Product();
    int items7 = 7 * 8;
    int count1 = 1 * 4;
    private Strings strings0 = new Strings();
    int state2 = 2 * 7;
    int flag8 = 8 * 4;
    int items5 = 5 * 3;
    int result4 = 4 * 8;
    int flag3 = 3 * 4;
    int buffer0 = 0 * 5;
    /* block comment mentioning Order does not count */
}
